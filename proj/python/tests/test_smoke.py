import json
import os
import pathlib

import pytest

import nmrqc

DATA = pathlib.Path(os.environ.get("NMRQC_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def load(name):
    return json.loads((DATA / "systems" / name).read_text())


def test_catalog_has_all_gates():
    catalog = nmrqc.gate_catalog()
    assert sum(1 for g in catalog if g["arity"] == 2) == 24
    assert {g["name"] for g in catalog if g["arity"] == 3} == {"NOP3", "NOT(I1)", "TOFFOLI", "ORNOR"}


def test_xor1_gate_run():
    result = nmrqc.run_gate("XOR1", load("gate3.json"))
    assert result["report"]["pass"]
    assert result["correlation"]["pairs"] == [["11", "01"], ["10", "10"], ["01", "11"], ["00", "00"]]
    assert len(result["peaks"]) == 4


def test_dj_verdicts():
    assert nmrqc.run_dj(1, "f2", load("dj1.json"))["verdict"] == "constant"
    assert nmrqc.run_dj(2, "f8", load("dj2.json"))["verdict"] == "balanced"


def test_program_round_trip():
    text = nmrqc.compile_gate("SWAP", load("gate3.json"))
    header, body = text.split("\n", 1)
    assert header == "# SWAP"
    assert nmrqc.normalize_program(text) == body


def test_errors_surface_as_exceptions():
    with pytest.raises(nmrqc.NmrqcError, match="missing acquire"):
        nmrqc.normalize_program("")
    with pytest.raises(nmrqc.NmrqcError, match="unsupported bits"):
        nmrqc.run_dj(3, "f1", load("dj2.json"))


def test_cli_exit_codes(tmp_path):
    system = str(DATA / "systems" / "gate3.json")
    code, out, _ = nmrqc.run_cli(["gates", "run", "SWAP", "--system", system, "--expect", "SWAP+NOT",
                                  "--out", str(tmp_path)])
    assert code == 1
    assert "FAIL" in out
    code, _, _ = nmrqc.run_cli(["gates", "list", "--arity", "3"])
    assert code == 0
