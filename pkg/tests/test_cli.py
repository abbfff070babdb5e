import json
import subprocess
import sys

import pytest

from divide_kh.cli import main
from support import FIXTURES

TREFOIL = str(FIXTURES / "trefoil.div")


def run(*args, stdin: str | None = None):
    proc = subprocess.run([sys.executable, "-m", "divide_kh.cli", *args], input=stdin,
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_check(capsys):
    assert main(["check", TREFOIL]) == 0
    out = capsys.readouterr().out
    assert out.startswith("valid\n") and "writhe: 3" in out


def test_homology_json(capsys):
    assert main(["homology", TREFOIL, "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["schema"] == 1 and len(obj["entries"]) == 6


@pytest.mark.parametrize("method", ["rank", "reduce", "sparse", "module"])
def test_homology_methods(capsys, method):
    main(["homology", TREFOIL, "--format", "tsv", "--method", method])
    assert capsys.readouterr().out.splitlines()[1:] == ["0\t1\t1", "0\t3\t1", "1\t5\t1", "1\t7\t1",
                                                         "2\t7\t1", "2\t9\t1"]


def test_poly_and_euler(capsys):
    main(["poly", TREFOIL])
    assert capsys.readouterr().out == "t - t^3 + t^4\n"
    assert main(["euler", str(FIXTURES / "figure_eight.div")]) == 0
    assert "relation: holds" in capsys.readouterr().out


def test_states_and_complex(capsys):
    main(["states", TREFOIL, "--enhanced", "--format", "json"])
    obj = json.loads(capsys.readouterr().out)
    assert len(obj["states"]) == 4 and len(obj["enhanced"]) == 14
    main(["complex", TREFOIL])
    out = capsys.readouterr().out
    assert "(A⊗A){3}" in out and "A{4} + (A⊗A){5}" in out and "(A⊗B){6}" in out


def test_moves_apply(capsys):
    assert main(["moves", "apply", TREFOIL, "II-insert@0:-1"]) == 0
    assert "word: -1 +1 +1" in capsys.readouterr().out


def test_stdin():
    code, out, _ = run("poly", "-", stdin=(FIXTURES / "figure_eight.div").read_text())
    assert code == 0 and out == "-t^-2 + t^-1 + 1 - t + t^2\n"


@pytest.mark.parametrize("args,code", [
    (["check", "-"], 1),
    (["moves", "apply", TREFOIL, "II-cancel@0"], 1),
    (["check", "/nonexistent.div"], 1),
    (["check", TREFOIL, "--format", "tsv"], 1),
    (["homology", TREFOIL, "--max-points", "1"], 1),
])
def test_input_errors(args, code):
    got, _, err = run(*args, stdin="left: e\nword: +1\nright: e\n")
    assert got == code and err


def test_json_error_on_stderr():
    code, out, err = run("check", "-", "--format", "json", stdin="left: e e\nword: 1\nright: m\n")
    assert code == 1 and out == ""
    obj = json.loads(err)
    assert obj["error"] == "DivideSyntaxError" and "line 2" in obj["message"]


def test_internal_error_code(monkeypatch, capsys):
    from divide_kh import cli
    monkeypatch.setattr(cli, "check_euler_relation", lambda *a, **k: False)
    assert main(["euler", TREFOIL]) == 2
    assert "InternalError" in capsys.readouterr().err


def test_rand_seeded():
    a = run("rand", "--points", "6", "--strands", "4", "--seed", "42")
    b = run("rand", "--points", "6", "--strands", "4", "--seed", "42")
    assert a == b and a[0] == 0
    assert "word: +3 -1 +1 +1 +3 +3" in a[1]


@pytest.mark.parametrize("cmd", [["homology", "--format", "json"], ["complex", "--matrices"],
                                 ["states", "--enhanced"]])
def test_byte_deterministic(cmd):
    path = str(FIXTURES / "figure_eight.div")
    args = [cmd[0], path, *cmd[1:]]
    first = run(*args)
    assert first[0] == 0
    assert run(*args) == first
    assert run(*args, "--threads", "2") == first


def test_report(tmp_path, capsys):
    out = tmp_path / "rep"
    assert main(["report", TREFOIL, "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["homology.png", "homology.tsv", "poly.png", "poly.tsv", "report.json"]
    report = json.loads((out / "report.json").read_text())
    assert report["euler_relation"] is True and report["W"]["text"] == "t - t^3 + t^4"
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    main(["report", TREFOIL, "--out", str(out)])
    assert {p.name: p.read_bytes() for p in out.iterdir()} == first
