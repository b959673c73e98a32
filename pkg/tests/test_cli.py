import json

import pytest

from hypergames.cli import RunConfig, export_dot, main, run

from conftest import SCENARIO

GOLDEN_SURE_ROWS = [
    [4, "q0", "q0"],
    [4, "q1", "q0"],
    [5, "q1", "q0"],
    [6, "q1", "q0"],
    [7, "q1", "q0"],
]


def test_sure_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main([str(SCENARIO), "--mode", "sure", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["mode"] == "sure"
    assert report["region"] == GOLDEN_SURE_ROWS
    assert report["strategy"] == []


def test_perceptual_report_stdout(capsys):
    assert main([str(SCENARIO), "--mode", "perceptual"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["arena_level"]["true"]["win1"] == [5, 6, 7]
    assert report["arena_level"]["perceived"]["win1"] == [2, 3]
    assert report["arena_level"]["perceived"]["win2"] == [0, 1, 4, 5, 6, 7]


def test_asw_report(capsys):
    assert main([str(SCENARIO), "--mode", "asw"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["levels"][0] == [[5, "q1", "q0"], [6, "q1", "q0"], [7, "q1", "q0"]]
    assert len(report["levels"]) == 4
    assert len(report["x_star"]) == 7
    assert report["strategy"] == [{"state": [0, "q0", "q0"], "action": "0->1"}]


def test_simulate_reproducible(capsys):
    args = [str(SCENARIO), "--mode", "simulate", "--trials", "100", "--seed", "9"]
    assert main(args) == 0
    first = json.loads(capsys.readouterr().out)
    assert main(args) == 0
    second = json.loads(capsys.readouterr().out)
    assert first == second
    assert first["wins"] == 100


def test_verify_counterexample_exit_code(capsys):
    # the initial state lies outside the deceptive sure region, so exhaustive
    # verification from it must fail with exit status 2
    assert main([str(SCENARIO), "--mode", "verify"]) == 2
    report = json.loads(capsys.readouterr().out)
    assert not report["verified"]
    assert report["counterexample"]["states"][0] == [0, "q0", "q0"]


def test_missing_file_exit_code(capsys):
    assert main(["/nonexistent.json", "--mode", "sure"]) == 1


def test_bad_schema_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"states": []}))
    assert main([str(p), "--mode", "sure"]) == 1


def test_dfa_cap_exit_code(capsys):
    assert main([str(SCENARIO), "--mode", "sure", "--dfa-cap", "1"]) == 3


def test_dot_output_deterministic(tmp_path):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    assert main([str(SCENARIO), "--mode", "sure", "--out", str(tmp_path / "r.json"), "--dot", str(a)]) == 0
    assert main([str(SCENARIO), "--mode", "sure", "--out", str(tmp_path / "r.json"), "--dot", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith("digraph game {")
    assert "style=dashed, color=red" in text  # pruned irrational move


def test_dot_shapes_and_fills(running_bundle):
    text = export_dot(
        running_bundle.inp.arena,
        {
            "true_win": running_bundle.arena_regions_true.win1,
            "perceived_win": running_bundle.arena_regions_perceived.win1,
        },
    )
    assert '"4" [label="4", shape=box]' in text
    assert "fillcolor=lightblue" in text
    assert "fillcolor=lightcoral" in text


def test_dot_marks_unreachable(running_bundle):
    from hypergames.hypergame import build_restricted_game

    full = build_restricted_game(
        running_bundle.hts, running_bundle.sr, reachable_only=False
    )
    text = export_dot(full, running_bundle.sure_regions)
    assert "dashed" in text


def test_full_space_flag(tmp_path, capsys):
    assert main([str(SCENARIO), "--mode", "sure", "--full-space"]) == 0
    report = json.loads(capsys.readouterr().out)
    # the full-space region contains the fragment's golden region
    region = [tuple(v) for v in report["region"]]
    for row in GOLDEN_SURE_ROWS:
        assert tuple(row) in region


def test_run_config_roundtrip():
    config = RunConfig(input_path=str(SCENARIO), mode="asw")
    assert run(config) == 0


def test_unknown_mode_rejected():
    with pytest.raises(SystemExit):
        main([str(SCENARIO), "--mode", "bogus"])
