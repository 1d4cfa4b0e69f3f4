import json
import subprocess
import sys
from pathlib import Path

import pytest

from critperiods.cli import main

S = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.mark.parametrize("argv,code", [
    (["critical-set", "critical_n2.json"], 0),
    (["r-index", "critical_n2.json"], 0),
    (["build-twist", "twist_n4.json"], 0),
    (["build-s5", "s5_n4.json"], 0),
    (["period-expr", "main_n2.json", "--kind", "rhs", "--normalize"], 0),
    (["verify-main", "main_n2.json"], 0),
    (["verify-main", "main_n3.toml"], 0),
    (["verify-main", "main_n2_mutated.json"], 1),
    (["verify-potential", "potential_a5.json"], 0),
    (["qj", "twist_n4.json", "--lvalue"], 0),
    (["brauer", "a5.json"], 0),
    (["brauer", "s3_perms.json"], 0),
])
def test_scenarios(argv, code, capsys):
    assert main([argv[0], str(S / argv[1])] + argv[2:]) == code
    assert capsys.readouterr().out


@pytest.mark.parametrize("argv,pointer", [
    (["critical-set", "bad_hodge.json"], "/motive"),
    (["critical-set", "bad_schema.json"], "/motive/rank"),
    (["verify-main", "a5.json"], "/motive"),
    (["period-expr", "main_n3.toml", "--kind", "stated"], "/k"),
    (["critical-set", "does_not_exist.json"], "/"),
])
def test_input_errors(argv, pointer, capsys):
    assert main([argv[0], str(S / argv[1])] + argv[2:]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["pointer"] == pointer
    assert err["error"]


def test_json_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        main(["verify-main", str(S / "main_n3.toml"), "--json", "--latex"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert all(r["verdict"] == "PASS" for r in data["runs"])


def test_json_stable_across_processes():
    cmd = [sys.executable, "-m", "critperiods.cli", "qj", str(S / "twist_n4.json"), "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True,
                       env={"PYTHONHASHSEED": "123", "PATH": ""}).stdout
    assert a == b


def test_out_directory(tmp_path, capsys):
    assert main(["verify-main", str(S / "main_n2.json"), "--latex", "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["verdict"] == "PASS" and report["k"] == 4
    tex = (tmp_path / "verify-main.tex").read_text()
    assert "\\sim_" in tex


def test_mutation_residual(capsys):
    main(["verify-main", str(S / "main_n2_mutated.json"), "--json"])
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "FAIL"
    assert data["residual"] == ["(2pi i)^-1"]


def test_brauer_certificate(capsys):
    main(["brauer", str(S / "a5.json"), "--json"])
    data = json.loads(capsys.readouterr().out)
    assert not data["solvable"]
    assert sum(t["multiplicity"] * t["index"] for t in data["terms"]) == 1
