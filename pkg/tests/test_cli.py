import json
import subprocess
import sys

import pytest

from stcurve import __version__
from stcurve.cli import dispatch, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def param_file(tmp_path):
    def write(doc):
        p = tmp_path / "param.json"
        p.write_text(json.dumps(doc))
        return str(p)
    return write


def test_semigroup(capsys):
    code, doc = run_json(capsys, "semigroup", "5", "7", "13")
    assert code == 0 and doc["conductor"] == 17
    assert doc["gaps"][-1] == 16
    assert doc["tool_version"] == __version__
    assert doc["inputs_echo"] == {"command": "semigroup", "L": 5, "M": 7, "N": 13}


def test_herzog(capsys):
    code, doc = run_json(capsys, "herzog", "4", "5", "7")
    assert code == 0
    assert doc["herzog"]["case"] == "H1"
    assert doc["equations"] == ["x^3 - y*z", "y^3 - x^2*z", "x*y^2 - z^2"]
    assert doc["syzygies_hold"] is True


def test_inverse(capsys):
    code, doc = run_json(capsys, "inverse", "gs2", "3", "2", "4", "1", "4")
    assert code == 0 and doc["triple"] == [4, 6, 7] and doc["is_image"] is False
    code, doc = run_json(capsys, "inverse", "gs1", "1", "2", "1", "2", "1", "1")
    assert doc["triple"] == [4, 5, 7] and doc["is_image"] is True


def test_stci(capsys):
    code, doc = run_json(capsys, "stci", "4", "5", "7")
    assert code == 0 and doc["bresinsky"]["g"] == "x^5 + y^4 - 2*x^2*y*z"
    assert doc["moh"] is False
    code, doc = run_json(capsys, "stci", "4", "6", "7")
    assert code == 0 and doc["case"] == "H2" and doc["bresinsky"] is None


def test_family_certified(capsys):
    code, doc = run_json(capsys, "family", "3", "3", "--p", "11")
    assert code == 0
    cert = doc["certificate"]
    assert cert["prop29"] == {"lhs": 24, "rhs": 22, "holds": True}
    assert cert["verdict"] == "Certified"
    assert cert["witnesses"]["one_form"]["valuation"] == 16


def test_family_not_certified_is_exit_1(capsys):
    code, doc = run_json(capsys, "family", "8", "3", "--p", "18")
    assert code == 1
    assert doc["certificate"]["verdict"] == "NotCertified"


def test_deform(capsys, param_file):
    path = param_file({"l": 5, "m": 17, "n": 28, "tails": {"y": [[18, "1"]]}})
    code, doc = run_json(capsys, "deform", path, "--trunc", "60")
    assert code == 1
    assert doc["value_semigroup"]["extra_values"] == [46]
    assert doc["trunc"] == 60
    path = param_file({"l": 5, "m": 7, "n": 13, "tails": {"y": [[11, "1"], [16, "1"]], "z": [[16, "1"]]}})
    code, doc = run_json(capsys, "deform", path)
    assert code == 0 and doc["certificate"]["verdict"] == "Certified"


def test_trunc_from_environment(capsys, param_file, monkeypatch):
    path = param_file({"l": 5, "m": 7, "n": 13, "tails": {"y": [[11, "1"]]}})
    monkeypatch.setenv("STCI_TRUNC", "45")
    code, doc = run_json(capsys, "deform", path)
    assert doc["trunc"] == 45
    monkeypatch.setenv("STCI_TRUNC", "lots")
    code, out, err = run(capsys, "deform", path)
    assert code == 2 and "STCI_TRUNC" in err


def test_deform_complete_intersection(capsys, param_file):
    path = param_file({"l": 4, "m": 6, "n": 7})
    code, doc = run_json(capsys, "deform", path)
    assert code == 1 and doc["verdict"] == "NotApplicable"


def test_scan_outputs(capsys):
    code, out, _ = run(capsys, "scan", "2..4", "2..4", "--canonical-p")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert any(r["a"] == 3 and r["b"] == 3 and r["p"] == 11 for r in rows)
    code, out, _ = run(capsys, "scan", "2..4", "2..4", "--csv")
    lines = out.splitlines()
    assert lines[0].startswith("a,b,l,m,n,conductor,d1,d2,d3,p")
    assert len(lines) == 1 + 6  # six admissible pairs in the rectangle


@pytest.mark.parametrize("argv", [
    ["semigroup", "2", "4", "6"],
    ["semigroup", "5", "7"],
    ["family", "2", "3"],
    ["family", "3", "3", "--p", "7"],
    ["scan", "1..3", "2..3"],
    ["scan", "3..2", "2..3"],
    ["inverse", "gs2", "3", "2", "4", "0", "0"],
    ["deform", "/nonexistent/file.json"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("stcurve:")
    assert out == ""


def test_quiet(capsys):
    code, out, _ = run(capsys, "family", "8", "3", "--p", "18", "--quiet")
    assert code == 1 and out == ""


def test_json_byte_stable(capsys):
    first = run(capsys, "family", "3", "3", "--p", "11", "--json")[1]
    second = run(capsys, "family", "3", "3", "--p", "11", "--json")[1]
    assert first == second


def test_dispatch_payload_fields():
    res = dispatch(["stci", "5", "7", "13"])
    assert res.exit_code == 0
    assert {"tool_version", "inputs_echo"} <= set(res.payload)
    res = dispatch(["stci", "5", "7"])
    assert res.exit_code == 2 and "tool_version" in res.payload


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stcurve", "semigroup", "4", "5", "7", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["gaps"] == [1, 2, 3, 6]
