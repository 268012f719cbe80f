import json

import pytest

from cplstab.cli import run
from cplstab.fock import FockVector
from cplstab.cpl import CL_vec


def test_cl_text(capsys):
    assert run(["cl", "--xi", "4:2:2,1", "--format", "text"]) == 0
    assert capsys.readouterr().out.strip() == "1/3·h[-3]·e{0} − 1/3·h[-1]^3·e{0}"


def test_cl_json_round_trip(capsys):
    assert run(["cl", "--xi", "6:3:2,1", "--format", "json"]) == 0
    assert FockVector.from_json(capsys.readouterr().out) == CL_vec((6, 3, (2, 1)))


def test_dim(capsys):
    assert run(["dim", "--n", "5"]) == 0
    assert capsys.readouterr().out.strip() == "32"


@pytest.mark.parametrize("argv", [
    ["cl", "--xi", "4:5:"],
    ["cl", "--xi", "garbage"],
    ["b"],
    ["dim", "--n", "-1"],
    ["frobnicate"],
    ["cl", "--xi", "4:2:1", "--bogus"],
    ["straighten", "--p", "2", "--q", "1"],
    ["stable-basis", "--j", "0", "--d", "x"],
    ["apply-T", "--p", "1", "--vector", "h[-1]·e{"],
])
def test_invalid_input_exit_code(argv, capsys):
    assert run(argv) == 2
    err = capsys.readouterr().err.strip()
    assert err.startswith("cplstab: error:") and "\n" not in err


def test_check_suite_and_output_file(tmp_path, capsys):
    out = tmp_path / "res.json"
    assert run(["check", "--suite", "stability", "--n-max", "8", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data[0]["suite"] == "stability" and data[0]["passed"]
    assert capsys.readouterr().out == ""


def test_failed_check_exit_code(monkeypatch, capsys):
    from cplstab import checks

    @checks._timed("broken")
    def broken(res):
        res.expect(False, "forced failure")

    monkeypatch.setitem(checks.SUITES, "example", broken)
    assert run(["check", "--suite", "example"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_other_verbs(capsys):
    assert run(["wn", "--n", "2"]) == 0
    assert capsys.readouterr().out.strip() in ("e{2}", "−e{2}")
    assert run(["straighten", "--p", "1", "--q", "3"]) == 0
    assert capsys.readouterr().out.strip() == "−h[-2]"
    assert run(["flambda", "--lam", "2,1"]) == 0
    assert capsys.readouterr().out.strip() == "h[-3] + h[-2]·h[-1]"
    assert run(["apply-T", "--p", "1"]) == 0
    assert capsys.readouterr().out.strip() in ("e{2}", "−e{2}")
    assert run(["apply-T", "--p", "-1", "--xi", "4:2:1"]) == 0
    assert run(["bbar", "--xi", "3:1:"]) == 0
    assert run(["b", "--xi", "2:1:1"]) == 0
    capsys.readouterr()
    assert run(["stable-basis", "--j", "0", "--d", "2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["n"] == 4


def test_seed_is_deterministic(capsys):
    run(["check", "--suite", "t1", "--seed", "3", "--format", "json"])
    first = json.loads(capsys.readouterr().out)[0]["checked"]
    run(["check", "--suite", "t1", "--seed", "3", "--format", "json"])
    assert json.loads(capsys.readouterr().out)[0]["checked"] == first
