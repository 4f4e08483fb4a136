import json
import subprocess
import sys
from pathlib import Path

import pytest

from cedga.cli import main

DOCS = Path(__file__).resolve().parent.parent / "docs"

GOLDEN = {
    "verify": ["verify", "--p", "2", "--q", "2", "--r", "3", "--s", "3"],
    "linhom": ["linhom", "--p", "3", "--q", "3", "--r", "4", "--s", "4", "--field", "2"],
    "dual": ["dual", "--p", "2", "--q", "2", "--r", "3", "--s", "3", "--field", "2"],
    "transfer": ["transfer", "--p", "2", "--q", "2", "--r", "3", "--s", "3"],
    "obstruct": ["obstruct", "--p", "2", "--q", "2", "--r", "3", "--s", "3", "--seed", "7", "--samples", "500"],
    "formality": ["formality", "--genus", "1"],
    "check": ["check", "example.dga"],
}


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_json(name, capsys, monkeypatch):
    monkeypatch.chdir(DOCS)
    _, out, _ = run(capsys, GOLDEN[name] + ["--format", "json"])
    assert out == (DOCS / "golden" / f"{name}.json").read_text()


def test_report_schema(capsys):
    code, out, _ = run(capsys, GOLDEN["verify"] + ["--format", "json"])
    rep = json.loads(out)
    assert set(rep) == {"command", "params", "results", "version"}
    assert rep["params"] == {"p": 2, "q": 2, "r": 3, "s": 3, "field": "Q"}
    for r in rep["results"].values():
        assert set(r) == {"status", "details"}
        assert r["status"] in {"pass", "fail", "info"}
    assert code == 0


@pytest.mark.parametrize("argv, code", [
    (["verify", "--p", "3", "--q", "3", "--r", "4", "--s", "4", "--field", "2"], 0),
    (["linhom", "--p", "4", "--q", "4", "--r", "5", "--s", "5"], 0),
    (["transfer", "--p", "2", "--q", "2", "--r", "3", "--s", "3", "--max-arity", "3"], 0),
    (["obstruct", "--p", "2", "--q", "2", "--r", "3", "--s", "3", "--seed", "1", "--samples", "50", "--field", "3"], 1),
    (["formality", "--genus", "2"], 1),
])
def test_exit_codes(argv, code, capsys):
    got, out, _ = run(capsys, argv)
    assert got == code
    assert out.rstrip().endswith("all checks passed" if code == 0 else "some checks FAILED")


@pytest.mark.parametrize("argv, fragment", [
    (["verify", "--p", "2", "--q", "3", "--r", "3", "--s", "3"], "need p"),
    (["verify", "--p", "2", "--q", "2", "--r", "3", "--s", "3", "--field", "4"], "prime"),
    (["obstruct", "--p", "2", "--q", "2", "--r", "3", "--s", "3"], "--seed"),
    (["obstruct", "--p", "2", "--q", "2", "--r", "3", "--s", "3", "--seed", "1", "--samples", "0"], "--samples"),
    (["transfer", "--p", "2", "--q", "2", "--r", "3", "--s", "3", "--max-arity", "1"], "--max-arity"),
    (["formality", "--genus", "0"], "--genus"),
    (["check", "/nonexistent/file.dga"], "cannot read"),
])
def test_usage_errors(argv, fragment, capsys):
    code, out, err = run(capsys, argv)
    assert code == 2 and out == ""
    assert fragment in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["verify", "--p", "2"])
    assert e.value.code == 2


def test_check_reports_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.dga"
    p.write_text("field Q\ngen a : 1\ndiff a = b\n")
    code, out, _ = run(capsys, ["check", str(p), "--format", "json"])
    rep = json.loads(out)
    assert code == 1
    assert rep["results"]["parse"]["details"] == {"line": 3, "column": 10, "message": "undeclared generator 'b'"}


def test_check_reports_bad_dga(tmp_path, capsys):
    p = tmp_path / "bad.dga"
    p.write_text("field 2\ngen a : 2\ngen b : 1\ngen x : 0\ndiff a = b\ndiff b = x\n")
    code, out, _ = run(capsys, ["check", str(p), "--format", "json"])
    rep = json.loads(out)
    assert code == 1 and rep["results"]["dga"]["status"] == "fail"


def test_json_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "cedga"] + GOLDEN["obstruct"] + ["--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_text_output(capsys):
    code, out, _ = run(capsys, GOLDEN["linhom"])
    assert out.startswith("cedga linhom p=3 q=3 r=4 s=4 field=2")
    assert "[PASS] homology" in out
