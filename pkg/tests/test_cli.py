from __future__ import annotations

import pytest

import screengame as sg
from screengame.cli import main

EXAMPLE1_DIGEST = "145323e7165a1bd4862143c9299c4305b39d91d0c3bbb79cc045dfb499b2b738"

D_GRAPH_DOT = """\
graph sender_d_n1 {
  v0 [label="0"];
  v1 [label="1"];
  v2 [label="2"];
  v0 -- v1;
  v0 -- v2;
  v1 -- v2;
}
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def stable_lines(text: str) -> list[str]:
    return [
        line
        for line in text.splitlines()
        if not line.startswith(("timing_ms: ", "timing_ms="))
    ]


def test_example_prints_the_builtin_model(capsys):
    code, out, err = run(capsys, "example")
    assert code == 0
    assert out == sg.EXAMPLE1_TEXT
    assert err == ""


def test_validate_example(capsys):
    code, out, _ = run(capsys, "validate", "--model", "example1")
    assert code == 0
    assert f"digest: {EXAMPLE1_DIGEST}" in out
    assert "h: honest" in out
    assert "d: other" in out
    assert "valid: true" in out


def test_solve_plain_golden(capsys):
    code, out, _ = run(capsys, "solve", "--model", "example1", "--n", "1")
    assert code == 0
    assert "objective: 4/3" in out
    assert "rate: 1.33333333333" in out
    assert "maximizer_count: 2" in out
    assert "  - 0;2" in out
    assert "  - 1;2" in out
    assert "certified: true" in out


def test_solve_machine_golden(capsys):
    code, out, _ = run(
        capsys, "solve", "--model", "example1", "--n", "1", "--format", "machine"
    )
    assert code == 0
    assert "objective=4/3" in out
    assert "maximizers.count=2" in out
    assert "maximizers.0=0;2" in out
    assert "designated.members.0=0" in out
    assert "designated.members.1=2" in out
    assert "designated.truthful.h.count=2" in out
    assert "designated.truthful.d.0=0" in out


def test_solve_heuristic_mode(capsys):
    code, out, _ = run(
        capsys, "solve", "--model", "example1", "--n", "2", "--mode", "heuristic"
    )
    assert code == 0
    assert "mode: heuristic" in out
    assert "certified: false" in out


def test_graph_report_and_alpha(capsys):
    code, out, _ = run(capsys, "graph", "--model", "example1", "--type", "d")
    assert code == 0
    assert "vertices: 3" in out
    assert "edges: 3" in out
    assert "alpha: 1" in out
    assert "alpha_certified: true" in out

    code, out, _ = run(capsys, "graph", "--model", "example1", "--union")
    assert code == 0
    assert "provenance: union" in out
    assert "edges: 3" in out
    assert "alpha: 1" in out


def test_graph_export_dot(capsys):
    code, out, _ = run(
        capsys, "graph", "--model", "example1", "--type", "d", "--export"
    )
    assert code == 0
    assert out == D_GRAPH_DOT


def test_graph_flag_conflicts(capsys):
    code, _, err = run(capsys, "graph", "--model", "example1")
    assert code == 1
    assert "error:" in err
    code, _, err = run(
        capsys, "graph", "--model", "example1", "--type", "d", "--union"
    )
    assert code == 1
    assert "mutually exclusive" in err


def test_oracle_check_agrees(capsys):
    code, out, _ = run(capsys, "oracle-check", "--model", "example1", "--n", "1")
    assert code == 0
    assert "image_sets_checked: 7" in out
    assert "agreed: true" in out


def test_oracle_check_random_mode(capsys):
    code, out, _ = run(
        capsys,
        "oracle-check",
        "--model",
        "example1",
        "--n",
        "2",
        "--strategies",
        "random",
        "--count",
        "20",
    )
    assert code == 0
    assert "image_sets_checked: 20" in out
    assert "agreed: true" in out


def test_bounds_report(capsys):
    code, out, _ = run(capsys, "bounds", "--model", "example1", "--n", "1", "--solve")
    assert code == 0
    assert "alpha_union: 1" in out
    assert "weighted_alpha: 5/3" in out
    assert "achieved: 4/3" in out
    assert "upper_rate: 1.66666666667" in out
    assert "achieved_certified: true" in out


def test_asymptotic_report(capsys):
    code, out, _ = run(capsys, "asymptotic", "--model", "example1", "--n-max", "3")
    assert code == 0
    assert "best_type: h" in out
    assert "union_floor: 1" in out
    assert "certified_floor: 3" in out
    assert "  - 1+2: 3*9<=27 ok" in out
    assert "fekete_all_hold: true" in out


def test_simulate_solved_strategy(capsys):
    code, out, _ = run(
        capsys, "simulate", "--model", "example1", "--type", "d", "--truth", "2"
    )
    assert code == 0
    assert "strategy_origin: solved" in out
    assert "decoded: 0" in out
    assert "reported: 0" in out
    assert "recovered: false" in out
    assert "worst_case_value: 4/3" in out
    assert "  h: 6" in out  # best-response multiplicities
    assert "  d: 8" in out


def test_simulate_given_members(capsys):
    code, out, _ = run(
        capsys,
        "simulate",
        "--model",
        "example1",
        "--type",
        "h",
        "--truth",
        "1",
        "--members",
        "0;1;2",
    )
    assert code == 0
    assert "strategy_origin: given" in out
    assert "recovered: true" in out
    assert "utility: 1" in out


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve"])  # --model is required
    assert exc.value.code == 2
    capsys.readouterr()


def test_domain_errors_exit_one(capsys, tmp_path):
    code, _, err = run(capsys, "validate", "--model", str(tmp_path / "missing.json"))
    assert code == 1
    assert err.startswith("error:")

    code, _, err = run(capsys, "graph", "--model", "example1", "--type", "z")
    assert code == 1
    assert "unknown type label" in err

    code, _, err = run(capsys, "solve", "--model", "example1", "--n", "3")
    assert code == 1
    assert "exceeds budget" in err

    bad = tmp_path / "bad.json"
    bad.write_text('{"alphabet": ["0"]}', encoding="utf-8")
    code, _, err = run(capsys, "validate", "--model", str(bad))
    assert code == 1
    assert "error:" in err


def test_reports_are_deterministic(capsys):
    _, first, _ = run(capsys, "solve", "--model", "example1", "--n", "2")
    _, second, _ = run(capsys, "solve", "--model", "example1", "--n", "2")
    assert stable_lines(first) == stable_lines(second)
    _, first, _ = run(
        capsys, "bounds", "--model", "example1", "--n", "2", "--format", "machine"
    )
    _, second, _ = run(
        capsys, "bounds", "--model", "example1", "--n", "2", "--format", "machine"
    )
    assert stable_lines(first) == stable_lines(second)


def test_model_file_round_trips_through_the_cli(capsys, tmp_path):
    path = tmp_path / "example.json"
    path.write_text(sg.serialize_model(sg.example_model()), encoding="utf-8")
    _, from_file, _ = run(capsys, "solve", "--model", str(path), "--n", "1")
    _, builtin, _ = run(capsys, "solve", "--model", "example1", "--n", "1")
    assert f"digest: {EXAMPLE1_DIGEST}" in from_file
    assert f"digest: {EXAMPLE1_DIGEST}" in builtin
    pick = lambda out, key: [l for l in out.splitlines() if l.startswith(key)]
    assert pick(from_file, "objective:") == pick(builtin, "objective:")
    assert pick(from_file, "maximizer_count:") == pick(builtin, "maximizer_count:")
