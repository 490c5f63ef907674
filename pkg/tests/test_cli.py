"""End-to-end CLI tests: subcommands, exit codes, verifiable reports."""

import json


from wignerlab.cli import main
from wignerlab.report import load_report, verify_report


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_example_list_and_export(tmp_path, capsys):
    code, out, _ = run(capsys, "example", "--list")
    assert code == 0 and "boxworld" in out
    path = tmp_path / "box.json"
    code, _, _ = run(capsys, "example", "boxworld", "--rep", "W_0", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["wigner"]["name"] == "W_0"
    code, _, err = run(capsys, "example", "nope")
    assert code == 1 and "unknown catalog entry" in err


def test_validate_ok_and_violation(tmp_path, capsys):
    path = tmp_path / "box.json"
    run(capsys, "example", "boxworld", "--out", str(path))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    data["observables"][0]["effects"][0]["constant"] = "2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    report = json.loads(out)
    assert report["violations"]


def test_parse_error_exit_code(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, _, err = run(capsys, "validate", str(broken))
    assert code == 2 and "error" in err


def test_analyze_report_verifies(tmp_path, capsys):
    path = tmp_path / "box.json"
    run(capsys, "example", "boxworld", "--out", str(path))
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0
    report = load_report(out)
    rows = verify_report(report)
    assert rows and all(ok for _, ok, _ in rows)
    verdicts = {c["id"]: c["verdict"] for c in report["claims"]}
    assert verdicts["compatibility"] is False
    assert verdicts["info_complete"] is True
    assert verdicts["complementary"] is False


def test_verify_subcommand_and_tamper_detection(tmp_path, capsys):
    path = tmp_path / "box.json"
    run(capsys, "example", "boxworld", "--out", str(path))
    _, out, _ = run(capsys, "analyze", str(path))
    report_path = tmp_path / "report.json"
    report_path.write_text(out)
    code, out2, _ = run(capsys, "verify", str(report_path))
    assert code == 0 and "claims verified" in out2
    # tamper with the incompatibility certificate: verification must fail
    data = json.loads(report_path.read_text())
    for claim in data["claims"]:
        if claim["kind"] == "lp_infeasible":
            claim["certificate"]["gap"] = "2"
    report_path.write_text(json.dumps(data))
    code, out3, _ = run(capsys, "verify", str(report_path))
    assert code == 1 and "FAIL" in out3


def test_wigner_free_and_degenerate_and_faithful(tmp_path, capsys):
    path = tmp_path / "box.json"
    run(capsys, "example", "boxworld", "--out", str(path))
    out_file = tmp_path / "w0.json"
    code, out, _ = run(capsys, "wigner", str(path), "--free", "0", "--out", str(out_file))
    assert code == 0
    report = json.loads(out)
    verdicts = {c["id"]: c["verdict"] for c in report["claims"]}
    assert verdicts == {
        "marginals": True, "faithful": True, "positive": False,
        "negativity_witness": True,
    }
    grid = json.loads(out_file.read_text())["wigner"]["grid"]
    assert grid[1][1] == {"linear": ["-1", "-1"], "constant": "1"}
    code, out, _ = run(capsys, "wigner", str(path), "--free", "1/2 x0 + 1/2 x1")
    assert code == 0
    report = json.loads(out)
    assert report["theory"]["wigner"]["grid"][0][0] == {
        "linear": ["1/2", "1/2"], "constant": "0",
    }
    code, out, _ = run(capsys, "wigner", str(path), "--degenerate")
    assert code == 0
    rows = verify_report(load_report(out))
    assert all(ok for _, ok, _ in rows)


def test_wigner_faithful_failure_exit(tmp_path, capsys):
    # a 4-dimensional hypercube with two binary observables cannot be faithful
    verts = [
        [str(i), str(j), str(k), str(l)]
        for i in (0, 1) for j in (0, 1) for k in (0, 1) for l in (0, 1)
    ]
    doc = {
        "state_space": {"type": "polytope", "vertices": verts},
        "observables": [
            {"name": "A", "outcomes": [0, 1],
             "effects": [
                 {"linear": ["1", "0", "0", "0"], "constant": "0"},
                 {"linear": ["-1", "0", "0", "0"], "constant": "1"},
             ]},
            {"name": "B", "outcomes": [0, 1],
             "effects": [
                 {"linear": ["0", "1", "0", "0"], "constant": "0"},
                 {"linear": ["0", "-1", "0", "0"], "constant": "1"},
             ]},
        ],
    }
    path = tmp_path / "hyper.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "wigner", str(path), "--faithful")
    assert code == 1
    assert "no faithful representation exists" in json.dumps(json.loads(out)["notes"])


def test_symmetries_subcommand(tmp_path, capsys):
    path = tmp_path / "wh.json"
    box = tmp_path / "box.json"
    run(capsys, "example", "boxworld", "--out", str(box))
    run(capsys, "wigner", str(box), "--free", "1/2 x0 + 1/2 x1", "--out", str(path))
    code, out, _ = run(capsys, "symmetries", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["group_order"] == 4
    assert all(row["transported"] for row in report["lifted_symmetries"])


def test_symmetries_channel_query_trit(tmp_path, capsys):
    path = tmp_path / "trit.json"
    run(capsys, "example", "trit", "--rep", "W", "--out", str(path))
    code, out, _ = run(
        capsys, "symmetries", str(path), "--channel-matrix",
        '{"matrix": [["-1","-1"],["1","0"]], "offset": ["1","0"]}',
    )
    assert code == 1
    report = json.loads(out)
    assert sorted(report["obstruction"]["witness_pair"]) == [["0", "0"], ["0", "1"]]


def test_covariant_unique_and_none(tmp_path, capsys):
    box = tmp_path / "box.json"
    run(capsys, "example", "boxworld", "--out", str(box))
    code, out, _ = run(capsys, "covariant", str(box))
    assert code == 0
    report = load_report(out)
    assert report["result"] == "unique"
    assert all(ok for _, ok, _ in verify_report(report))
    gon = tmp_path / "gon.json"
    run(capsys, "example", "deformed_12gon", "--out", str(gon))
    code, out, _ = run(capsys, "covariant", str(gon))
    assert code == 1
    report = load_report(out)
    assert report["result"] == "none"
    assert all(ok for _, ok, _ in verify_report(report))


def test_covariant_ball_with_channels(tmp_path, capsys):
    xz = tmp_path / "xz.json"
    ch = tmp_path / "ch.json"
    run(capsys, "example", "qubit_xz", "--rep", "W", "--out", str(xz),
        "--channels-out", str(ch))
    code, out, _ = run(capsys, "covariant", str(xz), "--channels", str(ch))
    assert code == 0
    report = load_report(out)
    assert report["result"] == "unique"
    assert report["theory"]["wigner"]["grid"][0][0] == {
        "linear": ["1/4", "1/4"], "constant": "1/4",
    }
    rows = verify_report(report)
    assert rows and all(ok for _, ok, _ in rows)


def test_plot_subcommand(tmp_path, capsys):
    box = tmp_path / "box.json"
    w0 = tmp_path / "w0.json"
    run(capsys, "example", "boxworld", "--out", str(box))
    run(capsys, "wigner", str(box), "--free", "0", "--out", str(w0))
    svg = tmp_path / "w0.svg"
    code, _, _ = run(capsys, "plot", str(w0), "--out", str(svg))
    assert code == 0
    first = svg.read_text()
    assert first.startswith("<svg") and "</svg>" in first
    run(capsys, "plot", str(w0), "--out", str(svg))
    assert svg.read_text() == first
    qb = tmp_path / "qb.json"
    run(capsys, "example", "qubit_ball", "--rep", "W", "--out", str(qb))
    code, _, err = run(capsys, "plot", str(qb), "--out", str(tmp_path / "qb.svg"))
    assert code == 1 and "two dimensions" in err


def test_analyze_ball_notes_unsupported_compatibility(tmp_path, capsys):
    xz = tmp_path / "xz.json"
    run(capsys, "example", "qubit_xz", "--out", str(xz))
    code, out, _ = run(capsys, "analyze", str(xz))
    assert code == 0
    report = load_report(out)
    assert any("compatibility" in note for note in report["notes"])
    verdicts = {c["id"]: c["verdict"] for c in report["claims"]}
    assert verdicts["complementary"] is True
    assert verdicts["info_complete"] is True
    assert all(ok for _, ok, _ in verify_report(report))


def test_wigner_degenerate_on_cube_is_lossy(tmp_path, capsys):
    cube = tmp_path / "cube.json"
    run(capsys, "example", "cube", "--out", str(cube))
    code, out, _ = run(capsys, "wigner", str(cube), "--degenerate")
    assert code == 0
    verdicts = {c["id"]: c["verdict"] for c in json.loads(out)["claims"]}
    assert verdicts["faithful"] is False and verdicts["marginals"] is True


def test_wigner_flag_errors_are_usage_errors(tmp_path, capsys):
    box = tmp_path / "box.json"
    run(capsys, "example", "boxworld", "--out", str(box))
    code, _, err = run(capsys, "wigner", str(box), "--free", "0;0;0")
    assert code == 2 and "free slots" in err
    code, _, err = run(capsys, "wigner", str(box), "--free", "x9")
    assert code == 2 and "ambient dimension" in err
    code, _, err = run(capsys, "wigner", str(box), "--free", "0", "--anchor", "9,9")
    assert code == 2 and "out of range" in err


def test_symmetries_on_ball_rep_skips_transport(tmp_path, capsys):
    xz = tmp_path / "xz.json"
    run(capsys, "example", "qubit_xz", "--rep", "W", "--out", str(xz))
    code, out, _ = run(capsys, "symmetries", str(xz))
    assert code == 0
    report = json.loads(out)
    assert report["group_order"] == 8
    assert any("transport" in note for note in report["notes"])


def test_wigner_requires_block_for_symmetries(tmp_path, capsys):
    box = tmp_path / "box.json"
    run(capsys, "example", "boxworld", "--out", str(box))
    code, _, err = run(capsys, "symmetries", str(box))
    assert code == 2 and "wigner" in err
