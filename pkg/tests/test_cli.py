import json
import subprocess
import sys

import pytest

from hamscreen.cli import main

POTENTIALS = {
    "q1": "(q1^2+q2^2)*q1",
    "iso": "(q1^2+q2^2)*(q1-i*q2)",
}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_screen_sample_json(capsys, samples):
    code, out, _ = run(capsys, "screen", samples / "w_q1.json", "--json")
    doc = json.loads(out)
    assert code == 10 and doc["verdict"] == "NonIntegrable"
    assert doc["witness"]["condition"] in (1, 3)


def test_screen_literal_and_text_file(capsys, samples):
    code, out, _ = run(capsys, "screen", POTENTIALS["iso"])
    assert code == 0 and "PassesNecessaryConditions" in out
    code, out, _ = run(capsys, "screen", samples / "cubic.txt", "--json")
    json.loads(out)
    assert code in (0, 10, 20)


def test_screen_with_points(capsys, samples):
    code, out, _ = run(capsys, "screen", samples / "w_q1.json", "--points", samples / "w_q1_points.json", "--json")
    doc = json.loads(out)
    assert code == 10 and len(doc["points"]) == 2
    for p in doc["points"]:
        assert p["witness"] == {"condition": 3, "lambda": "2", "block": 2, "rows": [2]}


def test_screen_inconclusive_exit(capsys):
    code, out, _ = run(capsys, "screen", "q1^3+q2^3+q3^3", "--json")
    assert code == 20 and json.loads(out)["verdict"] == "Inconclusive"


def test_table(capsys):
    code, out, _ = run(capsys, "table", 3, "1/8")
    assert code == 0 and json.loads(out) == [{"group": "Tetrahedral", "p": 0, "row": 8}]
    code, out, _ = run(capsys, "table", 3, "2/3", "--json")
    assert code == 0 and json.loads(out) == []


def test_k_zero_rejected(capsys, tmp_path):
    code, _, err = run(capsys, "table", 0, 1)
    assert code == 1 and "k" in err
    code, _, err = run(capsys, "exponents", 0, 1)
    assert code == 1
    code, _, err = run(capsys, "screen", "q1/q2")
    assert code == 1
    doc = tmp_path / "v.json"
    doc.write_text(json.dumps({"n": 2, "k": 0, "numerator": []}))
    code, _, err = run(capsys, "screen", doc)
    assert code == 1 and "k = 0" in err


def test_exponents(capsys):
    code, out, _ = run(capsys, "exponents", 3, 5, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["differences"]["inf"] == "11/6" and doc["tau2"] == "121/36"


def test_design_and_bracket(capsys, samples, tmp_path):
    code, out, _ = run(capsys, "design", samples / "c.json", samples / "A.json", 3, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["k"] == 3 and doc["n"] == 3
    pot = tmp_path / "designed.json"
    pot.write_text(out)
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([["1", {"re": "0", "im": "1"}, "0"]]))
    code, out, _ = run(capsys, "screen", pot, "--points", pts, "--json")
    assert code == 10 and json.loads(out)["witness"]["block"] == 3
    code, out, _ = run(capsys, "bracket", samples / "H.json", samples / "F.json")
    assert code == 0 and out.strip() == "0"
    code, out, _ = run(capsys, "bracket", samples / "H.json", samples / "H.json", "--json")
    assert json.loads(out)["zero"] is True


def test_design_constraint_violation(capsys, tmp_path):
    c = tmp_path / "c.json"
    c.write_text('["1", "0"]')
    A = tmp_path / "A.json"
    A.write_text(json.dumps({"n": 2, "entries": [["1", "0"], ["0", "5"]]}))
    code, _, err = run(capsys, "design", c, A, 3)
    assert code == 1 and err


def test_parse_errors_carry_location(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "expr": "q1^3 +* q2"\n}\n')
    code, _, err = run(capsys, "screen", bad)
    assert code == 1 and f"{bad}:2" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"expr": \n')
    code, _, err = run(capsys, "screen", broken)
    assert code == 1 and f"{broken}:" in err and "invalid JSON" in err
    two = tmp_path / "two.txt"
    two.write_text("# comment\nq1^3\nq2^3\n")
    code, _, err = run(capsys, "screen", two)
    assert code == 1 and f"{two}:3" in err
    code, _, err = run(capsys, "screen", tmp_path / "missing.json")
    assert code == 1 and "no such file" in err


def test_usage_errors(capsys):
    assert run(capsys, "screen")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "sweep", "--kmax", 0)[0] == 1


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "screen", POTENTIALS["q1"], "--json", "--out", target)
    assert code == 10 and out == ""
    assert json.loads(target.read_text())["verdict"] == "NonIntegrable"


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--kmax", 4, "--pmax", 3, "--json")
    doc = json.loads(out)
    assert code == 0 and set(doc["suites"]) == {"symmetry", "disjointness", "l4", "psi"}
    for suite in doc["suites"].values():
        assert suite["checked"] > 0 and suite["failures"] == []
    code, out, _ = run(capsys, "sweep", "--suite", "psi", "--kmax", 3, "--pmax", 1, "--fail-on-inconclusive")
    assert code == 0 and "psi" in out


def test_json_report_is_deterministic(capsys):
    a = run(capsys, "screen", POTENTIALS["q1"], "--json")[1]
    b = run(capsys, "screen", POTENTIALS["q1"], "--json")[1]
    assert a == b


@pytest.mark.parametrize("level,seen", [("off", False), ("info", True), ("debug", True)])
def test_logging_env(level, seen):
    proc = subprocess.run(
        [sys.executable, "-m", "hamscreen", "sweep", "--suite", "psi", "--kmax", "3", "--pmax", "0"],
        env={"SCREENER_LOG": level, "PATH": ""},
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert ("running sweep" in proc.stderr) is seen


def test_bad_log_level():
    proc = subprocess.run(
        [sys.executable, "-m", "hamscreen", "table", "3", "2"],
        env={"SCREENER_LOG": "loud", "PATH": ""},
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1 and "SCREENER_LOG" in proc.stderr
