import json
import subprocess
import sys

import pytest

from soergel_ext import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "soergel_ext", "gomi", "--m", "3", "--json"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["schema"] == "1"


@pytest.mark.parametrize("argv", [
    ["ext", "--m", "7"],
    ["ext", "--m", "3", "--delta", "1/2"],
    ["ext", "--delta", "x/y"],
    ["ext", "--word", "sxt"],
    ["ext", "--cutoff", "2"],
    ["verify", "--jobs", "0"],
    ["hhh", "--braid", "1 2"],
    ["nosuch"],
    [],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as e:
        cli.main(argv)
    assert e.value.code == 2


def test_verification_failure_exits_1(capsys, monkeypatch):
    def fake(m):
        return {"m": m, "conditions": [{"name": "tau(1)", "value": "0", "expected": "1", "equal": False}],
                "pass": False, "note": ""}

    monkeypatch.setattr("soergel_ext.hecke.gomi_check", fake)
    code, out = run(capsys, "gomi", "--m", "4")
    assert code == 1


def test_json_is_deterministic(capsys):
    _, a = run(capsys, "ext", "--word", "st", "--json")
    _, b = run(capsys, "ext", "--word", "st", "--json")
    assert a == b
    assert json.loads(a)["schema"] == "1"


def test_rationals_are_written_as_fractions(capsys):
    code, d = run_json(capsys, "ext", "--word", "s", "--delta", "5/2")
    assert code == 0
    assert "5/2" in json.dumps(d)


def test_ext_table_contains_phi_slice(capsys):
    code, d = run_json(capsys, "ext", "--word", "sts", "--target", "bt")
    assert code == 0
    assert d["groups"]["1"]["dims"]["-4"] == 1


def test_structure_and_indecomp(capsys):
    assert run(capsys, "ext", "--word", "stst", "--m", "4", "--structure")[0] == 0
    assert run(capsys, "ext", "--m", "3", "--indecomp", "--cutoff", "16")[0] == 0


def test_hilbert(capsys):
    code, d = run_json(capsys, "hilbert", "--word", "sts")
    assert code == 0


def test_hhh_hopf(capsys):
    code, out = run(capsys, "hhh", "--braid", "1 1", "--homfly")
    assert code == 0
    assert "(Q^2/(1-Q^2) + Q^-2 T^2) + A(Q^-2/(1-Q^2))" in out


def test_gomi_all(capsys):
    code, d = run_json(capsys, "gomi")
    assert code == 0


def test_verify_single_and_list(capsys):
    code, d = run_json(capsys, "verify", "--relation", "barbell", "--relation", "newgen-square")
    assert code == 0
    assert [r["status"] for r in d["reports"]] == ["pass", "pass"]
    code, out = run(capsys, "verify", "--list")
    assert code == 0 and "2m-absorption" in out


def test_verify_twocolor_at_m2_is_skipped_not_failed(capsys):
    code, d = run_json(capsys, "verify", "--suite", "twocolor", "--m", "2")
    assert code == 0
    assert {r["status"] for r in d["reports"]} == {"skipped"}
