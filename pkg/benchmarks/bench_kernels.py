#!/usr/bin/env python3
"""Benchmark the compiled pivot kernels against the pure-Python fallback.

The workloads are the engine's real hot paths: LP feasibility (simplex
phase 1), exact rank (fraction-free elimination), lifted-symmetry
enumeration (membership LPs), and the covariant solver.  The script
re-executes itself once per backend (the backend is chosen at import
time via WIGNERLAB_PURE_PYTHON) and prints a comparison table.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def workloads():
    import random
    from fractions import Fraction as F

    from wignerlab import catalog
    from wignerlab.exact import LinearProgram, Matrix, lp_feasible, rank
    from wignerlab.symmetry import enumerate_lifted_symmetries, solve_covariant
    from wignerlab.theory import are_compatible

    box = catalog.load("boxworld")
    dia = catalog.load("rebit_diamond")
    rng = random.Random(999)
    matrices = [
        Matrix.from_rows(
            [[F(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(9)] for _ in range(9)]
        )
        for _ in range(40)
    ]
    programs = []
    for _ in range(60):
        n = rng.randint(4, 8)
        eqs = tuple(
            (tuple(F(rng.randint(-4, 4)) for _ in range(n)), F(rng.randint(-3, 3)))
            for _ in range(rng.randint(1, 3))
        )
        ineqs = tuple(
            (tuple(F(rng.randint(-4, 4)) for _ in range(n)), F(rng.randint(-3, 3)))
            for _ in range(rng.randint(3, 8))
        )
        programs.append(LinearProgram(n, eqs, ineqs))

    def bench_rank():
        total = 0
        for m in matrices:
            total += rank(m)
        return total

    def bench_lp():
        feasible = 0
        for lp in programs:
            result = lp_feasible(lp)
            feasible += result.__class__.__name__ == "Feasible"
        return feasible

    def bench_compat():
        t = box.theory
        result = are_compatible(t.observable("A"), t.observable("B"), t.state_space)
        result2 = are_compatible(t.observable("C"), t.observable("D"), t.state_space)
        return type(result).__name__, type(result2).__name__

    def bench_symmetries():
        return len(enumerate_lifted_symmetries(box.representations["W_1/2"]))

    def bench_covariant():
        t = dia.theory
        return solve_covariant(t.obs_a, t.obs_b, t.state_space).kind

    return {
        "rank(40 x 9x9 rational)": bench_rank,
        "lp_feasible(60 random programs)": bench_lp,
        "compatibility LPs (boxworld)": bench_compat,
        "lifted-symmetry enumeration": bench_symmetries,
        "covariant solve (rebit_diamond)": bench_covariant,
    }


def run_worker(repeat: int) -> None:
    from wignerlab._kernels import BACKEND

    results = {"backend": BACKEND, "timings": {}}
    for name, fn in workloads().items():
        fn()  # warm up
        best = None
        for _ in range(repeat):
            start = time.perf_counter()
            fn()
            elapsed = time.perf_counter() - start
            best = elapsed if best is None else min(best, elapsed)
        results["timings"][name] = best
    print(json.dumps(results))


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.worker:
        run_worker(args.repeat)
        return 0
    rows = {}
    backends = {}
    for mode, env_value in (("compiled", None), ("pure-python", "1")):
        env = dict(os.environ)
        env.pop("WIGNERLAB_PURE_PYTHON", None)
        if env_value:
            env["WIGNERLAB_PURE_PYTHON"] = env_value
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker",
             "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        )
        data = json.loads(out.stdout.strip().splitlines()[-1])
        backends[mode] = data["backend"]
        for name, secs in data["timings"].items():
            rows.setdefault(name, {})[mode] = secs
    print(f"compiled backend: {backends['compiled']},"
          f" fallback backend: {backends['pure-python']}")
    if backends["compiled"] == backends["pure-python"]:
        print("note: the compiled extension is unavailable; both columns"
              " ran the pure-Python kernels")
    width = max(len(n) for n in rows)
    print(f"{'workload'.ljust(width)}  {'compiled':>12} {'pure-python':>12} {'speedup':>8}")
    for name, t in rows.items():
        speed = t["pure-python"] / t["compiled"] if t["compiled"] else float("inf")
        print(
            f"{name.ljust(width)}  {t['compiled'] * 1e3:>10.2f}ms"
            f" {t['pure-python'] * 1e3:>10.2f}ms {speed:>7.2f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
