import json
import subprocess
import sys
from pathlib import Path

import pytest

from fidentity.cli import main
from fidentity.polymat import charpoly_data
from fidentity.polyring import Polynomial

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def poly(data, n=2):
    return Polynomial.from_json(n, data)


def test_verify_adjugate_identity(capsys):
    code, out, _ = run(capsys, "verify", "--n", 2, "--file", DATA / "adjugate.fi")
    assert code == 0 and out["central"]
    assert poly(out["value"]) == charpoly_data(2).determinant


def test_verify_non_identity(capsys):
    code, out, err = run(capsys, "verify", "--n", 2, "--file", DATA / "not_identity.fi")
    assert code == 1 and out["central"] is False
    assert "not an identity" in err


def test_decompose_adjugate_identity(capsys):
    code, out, _ = run(capsys, "decompose", "--n", 2, "--file", DATA / "adjugate.fi")
    assert code == 0 and out["lambda_agrees"]
    dec = out["decomposition"]
    assert dec["verified"] and dec["case"] == "b"
    assert poly(dec["lambda"]["poly"]) == Polynomial.one(2)
    tr = Polynomial.var(2, 1, 1) + Polynomial.var(2, 2, 2)
    assert poly(dec["mu"][0]["poly"]) == tr
    assert out["oracle"]["verified"]


def test_decompose_case_a_without_oracle(capsys):
    code, out, _ = run(capsys, "decompose", "--file", DATA / "cancel.fi", "--no-oracle")
    assert code == 0 and "oracle" not in out
    assert out["decomposition"]["lambda"] is None


def test_decompose_trace_adjugate(capsys):
    code, out, _ = run(capsys, "decompose", "--file", DATA / "trace_adjugate.fi", "--debug")
    assert code == 0
    tr = Polynomial.var(2, 1, 1) + Polynomial.var(2, 2, 2)
    assert poly(out["decomposition"]["lambda"]["poly"]) == tr


@pytest.mark.parametrize("argv,code", [
    (["verify", "--file", DATA / "not_identity.fi"], 1),
    (["decompose", "--file", DATA / "not_identity.fi"], 1),
    (["verify", "--file", DATA / "mismatched.fi"], 1),
    (["verify", "--file", DATA / "inhomogeneous.fi"], 2),
    (["verify", "--file", DATA / "missing.fi"], 2),
    (["verify", "--n", 3, "--file", DATA / "adjugate.fi"], 2),
    (["standard-form", "--n", 2, "--expr", "x + x^2"], 2),
    (["standard-form", "--n", 2, "--expr", "x + tr(x)"], 2),
    (["standard-form", "--n", 2, "--expr", "x +"], 2),
    (["adjugate-solve", "--n", 2, "--m", 1, "--expr", "x"], 1),
    (["l2", "--n", 2, "--q", "x", "--r", "x^2"], 1),
])
def test_negative_paths(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err and "theorem violation" not in err


def test_standard_form_and_adjugate_solve(capsys):
    code, out, _ = run(capsys, "standard-form", "--n", 2, "--expr", "x^2")
    assert code == 0 and out["verified"]
    assert poly(out["coefficients"][1]["poly"]) == Polynomial.var(2, 1, 1) + Polynomial.var(2, 2, 2)
    code, out, _ = run(capsys, "adjugate-solve", "--n", 2, "--m", 2, "--expr", "adj(x)^2")
    assert code == 0 and poly(out["lambda"]["poly"]) == Polynomial.one(2)


def test_l2_and_charpoly(capsys):
    code, out, _ = run(capsys, "l2", "--n", 2, "--q", "x^2", "--r", "x^2", "--debug")
    assert code == 0 and out["p"]["d"] == 1
    code, out, _ = run(capsys, "charpoly", "--n", 3)
    assert code == 0 and poly(out["determinant"], 3) == charpoly_data(3).determinant


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify"])
    assert info.value.code == 2


def test_fuzz_report(capsys):
    code, out, _ = run(capsys, "fuzz", "--seed", 7, "--cases", 2, "--suite", "decompose")
    assert code == 0
    assert out["header"]["seed"] == 7 and out["summary"]["pass"] == 2
    assert [r["index"] for r in out["results"]] == [0, 1]


def _fuzz_bytes(*extra):
    cmd = [sys.executable, "-m", "fidentity", "fuzz", "--seed", "42", *extra]
    proc = subprocess.run(cmd, capture_output=True, check=True)
    return proc.stdout


def test_fuzz_is_deterministic_across_processes_and_workers():
    first = _fuzz_bytes()
    assert first == _fuzz_bytes()
    assert first == _fuzz_bytes("--workers", "3")
    assert json.loads(first)["summary"]["violation"] == 0


def test_no_color_when_not_a_tty(capsys, monkeypatch):
    monkeypatch.delenv("NO_COLOR", raising=False)
    _, _, err = run(capsys, "verify", "--file", DATA / "not_identity.fi")
    assert "\x1b[" not in err
