"""Random exact-rational instances for the property suites.

Everything is generated from a seeded ``random.Random`` so the suites
are reproducible; all outputs are valid by construction (polytopes in
convex position, observables with effects in [0, 1] summing to one).
"""

from fractions import Fraction as F
import random

from wignerlab.geometry import AffineFunctional, Polytope, extremal_range
from wignerlab.theory import Observable, Theory


def random_fraction(rng: random.Random, lo=-3, hi=3, den=4) -> F:
    return F(rng.randint(lo * den, hi * den), den)


def random_polygon(rng: random.Random, max_points: int = 5) -> Polytope:
    """Hull of a few random rational points in the plane (dim can degenerate)."""
    k = rng.randint(1, max_points)
    pts = [(random_fraction(rng), random_fraction(rng)) for _ in range(k)]
    return Polytope.hull_of(pts)


def random_effect_split(rng: random.Random, space, n_outcomes: int):
    """Effects f_1..f_n with each f_i in [0, 1] on the space and sum 1."""
    dim = space.ambient_dim
    remaining = AffineFunctional.one(dim)
    effects = []
    for _ in range(n_outcomes - 1):
        lo, _ = extremal_range(space, remaining)
        budget = lo.as_rational()
        h = AffineFunctional(
            tuple(random_fraction(rng, -2, 2) for _ in range(dim)), F(0)
        )
        h_lo, h_hi = extremal_range(space, h)
        h_lo, h_hi = h_lo.as_rational(), h_hi.as_rational()
        if h_hi == h_lo:
            f = AffineFunctional.const(dim, budget * F(rng.randint(0, 4), 8))
        else:
            # normalize h into [0, 1] then scale under the remaining budget
            unit = (h - AffineFunctional.const(dim, h_lo)).scale(1 / (h_hi - h_lo))
            f = unit.scale(budget * F(rng.randint(0, 8), 8))
        effects.append(f)
        remaining = remaining - f
    effects.append(remaining)
    return tuple(effects)


def random_observable(rng: random.Random, space, name: str, n_outcomes: int) -> Observable:
    return Observable(
        name, tuple(range(n_outcomes)), random_effect_split(rng, space, n_outcomes)
    )


def random_theory(
    rng: random.Random,
    max_points: int = 5,
    outcome_choices=(2, 2, 3),
) -> Theory:
    space = random_polygon(rng, max_points)
    obs_a = random_observable(rng, space, "A", rng.choice(outcome_choices))
    obs_b = random_observable(rng, space, "B", rng.choice(outcome_choices))
    return Theory(space, (obs_a, obs_b))


def random_free_block(rng: random.Random, space, obs_a, obs_b, anchor=None):
    """Random functionals for the free slots of the family constructor."""
    alpha = obs_a.n_outcomes - 1 if anchor is None else anchor[0]
    beta = obs_b.n_outcomes - 1 if anchor is None else anchor[1]
    dim = space.ambient_dim
    free = {}
    for a in range(obs_a.n_outcomes):
        for b in range(obs_b.n_outcomes):
            if a != alpha and b != beta and rng.random() < 0.8:
                free[(a, b)] = AffineFunctional(
                    tuple(random_fraction(rng, -1, 1) for _ in range(dim)),
                    random_fraction(rng, -1, 1),
                )
    return free
