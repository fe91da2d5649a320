import json
import os
import subprocess
import sys

from mqunits.report import CHECK_IDS, validate_report_dict


def run_cli(*args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "mqunits.cli", *args],
        capture_output=True, text=True, **kw,
    )


def test_verify_text_output():
    res = run_cli("verify", "--p", "5", "--q", "11")
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert lines[0].startswith("pair (5, 11): Cond1")
    assert len(lines) == 1 + len(CHECK_IDS)
    assert all(line.startswith("PASS ") for line in lines[1:])


def test_verify_json_output():
    res = run_cli("verify", "--p", "13", "--q", "3", "--json")
    assert res.returncode == 0
    d = json.loads(res.stdout)
    validate_report_dict(d)
    assert d["condition"]["tag"] == "Cond1"


def test_verify_not_applicable():
    res = run_cli("verify", "--p", "5", "--q", "7")
    assert res.returncode == 0
    assert "NotApplicable" in res.stdout


def test_usage_errors_exit_2():
    assert run_cli("verify", "--p", "5").returncode == 2
    assert run_cli("frobnicate").returncode == 2
    assert run_cli().returncode == 2
    assert run_cli("classnum", "--disc", "20").returncode == 2
    assert run_cli("fsu", "--radicands", "7,11").returncode == 2


def test_scan_emits_reports_and_summary(tmp_path):
    cache = str(tmp_path / "cache")
    res = run_cli("scan", "--max", "12", "--cache", cache)
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert len(lines) == 3
    for line in lines[:2]:
        validate_report_dict(json.loads(line))
    summary = json.loads(lines[2])
    assert summary["schema"] == "mqunits-scan/1"
    assert summary["pairs_examined"] == 2
    assert summary["failures"] == []

    warm = run_cli("scan", "--max", "12", "--cache", cache)
    assert warm.returncode == 0
    assert warm.stdout == res.stdout
    assert os.path.exists(os.path.join(cache, "classnums.json"))


def test_scan_with_jobs():
    res = run_cli("scan", "--max", "12", "--jobs", "2")
    assert res.returncode == 0
    assert len(res.stdout.splitlines()) == 3


def test_fsu_biquadratic():
    res = run_cli("fsu", "--radicands", "2,5")
    assert res.returncode == 0
    d = json.loads(res.stdout)
    assert d["field"] == [2, 5]
    assert d["q_index_log2"] == 1
    assert d["unit_index"] == 2
    assert [g["label"] for g in d["generators"]] == \
        ["eps_2", "eps_5", "sqrt(eps_2*eps_5*eps_10)"]


def test_fsu_quadratic_and_cm():
    res = run_cli("fsu", "--radicands", "5")
    assert json.loads(res.stdout)["generators"][0]["label"] == "eps_5"

    res = run_cli("fsu", "--radicands", "2", "--cm")
    d = json.loads(res.stdout)
    assert d["torsion"] == "zeta8"
    assert d["unit_index"] == 2


def test_fsu_degree8_cm():
    res = run_cli("fsu", "--radicands", "2,5,11", "--cm")
    assert res.returncode == 0
    d = json.loads(res.stdout)
    assert d["field"] == [2, 5, 11, -1]
    assert d["torsion"] == "zeta8"
    assert d["q_index_log2"] == 7
    assert d["unit_index"] == 256
    assert len(d["generators"]) == 7


def test_classnum_verb():
    res = run_cli("classnum", "--disc", "-440")
    d = json.loads(res.stdout)
    assert d["h"] == 12 and d["h2"] == 4
    assert d["group_structure"] is not None

    res = run_cli("classnum", "--disc", "40")
    d = json.loads(res.stdout)
    assert d["radicand"] == 10 and d["h"] == 2
