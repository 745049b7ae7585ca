"""CLI subcommands, exit codes, and report determinism."""

import json

import pytest

from monoidkit.cli import run

T3 = """\
monoid T3
kind builtin
name truncated
param 3
"""

N1 = """\
monoid N
kind builtin
name affine
param 1
"""

FLAT = """\
monoid F
kind builtin
name flat
"""

FPM = """\
monoid K
kind fp
gens 2
rel 2 0 -> 0 2
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("t3", T3), ("n1", N1), ("flat", FLAT), ("fp", FPM)):
        p = tmp_path / f"{name}.mon"
        p.write_text(text)
        out[name] = str(p)
    return out


def run_cli(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info_exit_zero(files, capsys):
    code, out, _ = run_cli(capsys, "info", "--input", files["t3"])
    assert code == 0
    assert "cardinality" in out and "predicate cancellative" in out


def test_apply_path_report(files, capsys):
    code, out, _ = run_cli(capsys, "apply", "--path", "R,F", "--input", files["t3"])
    assert code == 0
    assert "cardinality -- 1" in out
    assert "map injective on sample -- no" in out


def test_check_theorem_pass(files, capsys):
    code, out, _ = run_cli(capsys, "check", "--theorem", "4.2", "--input", files["n1"])
    assert code == 0
    assert "[pass]" in out


def test_check_theorem_inapplicable_exit_three(files, capsys):
    code, out, _ = run_cli(capsys, "check", "--theorem", "4.2", "--input", files["t3"])
    assert code == 3


def test_check_prop21_counterexample_exit_one(files, capsys):
    code, out, _ = run_cli(capsys, "check", "--theorem", "p2.1", "--input", files["flat"])
    assert code == 1
    assert "counterexample" in out and "n1=2 n2=3" in out


def test_check_prop21_holds_after_path(files, capsys):
    code, out, _ = run_cli(
        capsys, "check", "--theorem", "p2.1", "--path", "D", "--input", files["n1"],
        "--bound", "6",
    )
    assert code == 0
    assert "holds" in out


def test_paths_lists_six(files, capsys):
    code, out, _ = run_cli(capsys, "paths", "--from", "S", "--to", "UG", "--max-len", "4")
    assert code == 0
    assert "paths found -- 6" in out
    assert out.index("R,F,D,U") < out.index("R,D,F,U") < out.index("D,U,R,F")


def test_diagram_commutes(files, capsys):
    code, out, _ = run_cli(capsys, "diagram", "--input", files["t3"], "--max-len", "3")
    assert code == 0
    assert "commute" in out
    assert "note:" in out


def test_reports_byte_identical(files, capsys):
    _, out1, _ = run_cli(capsys, "diagram", "--input", files["t3"], "--max-len", "4")
    _, out2, _ = run_cli(capsys, "diagram", "--input", files["t3"], "--max-len", "4")
    assert out1 == out2
    _, j1, _ = run_cli(capsys, "info", "--input", files["t3"], "--json")
    _, j2, _ = run_cli(capsys, "info", "--input", files["t3"], "--json")
    assert j1 == j2


def test_json_output_parses(files, capsys):
    code, out, _ = run_cli(capsys, "info", "--input", files["n1"], "--json")
    assert code == 0
    body = json.loads(out)
    assert body["tool"].startswith("monoidkit ")
    assert body["input"]["digest"]
    assert isinstance(body["findings"], list)


def test_input_error_exit_two(files, capsys, tmp_path):
    code, _, err = run_cli(capsys, "info", "--input", str(tmp_path / "missing.mon"))
    assert code == 2
    bad = tmp_path / "bad.mon"
    bad.write_text("monoid X\nkind wat\n")
    code, _, err = run_cli(capsys, "info", "--input", str(bad))
    assert code == 2
    assert "input error" in err


def test_missing_input_flag_exit_two(files, capsys):
    code, _, err = run_cli(capsys, "info")
    assert code == 2


def test_literal_mode_flag(files, capsys):
    code, out, _ = run_cli(
        capsys, "apply", "--path", "F", "--input", files["t3"], "--mode", "literal"
    )
    assert code == 1  # literal difference demands cancellativity


def test_fp_info_reports_unknowns(files, capsys):
    code, out, _ = run_cli(capsys, "info", "--input", files["fp"], "--bound", "8")
    assert code == 0
    assert "unknown" in out
