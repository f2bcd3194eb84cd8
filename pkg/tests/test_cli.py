"""CLI behaviour and golden-file comparisons.

Set GL2DEGREES_REGEN_GOLDEN=1 to rewrite the golden files after an
intended output change, then review the diff.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from gl2degrees.cli import main

GOLDEN = Path(__file__).parent / "golden" / "v1"
REGEN = os.environ.get("GL2DEGREES_REGEN_GOLDEN") == "1"

GOLDEN_CASES = {
    "rml.txt": ["table", "rml"],
    "rmcml.txt": ["table", "rmcml"],
    "rmnoncml.txt": ["table", "rmnoncml"],
    "tjl.txt": ["table", "tjl"],
    "tl.txt": ["table", "tl"],
    "cm.txt": ["table", "cm"],
    "eml.txt": ["table", "eml"],
    "eml.json": ["table", "eml", "--ell", "5,11", "--format", "json"],
    "setml.txt": ["table", "setml"],
    "setml.csv": ["table", "setml", "--ell", "11", "--format", "csv"],
    "eejl.txt": ["table", "eejl"],
    "setl.txt": ["table", "setl"],
    "grid.txt": ["table", "grid"],
    "grid.csv": ["table", "grid", "--format", "csv"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(capsys, name):
    code, out, _ = run(capsys, *GOLDEN_CASES[name])
    assert code == 0
    path = GOLDEN / name
    if REGEN:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


def test_table_row_for_one_prime(capsys):
    code, out, _ = run(capsys, "table", "rml", "--ell", "7")
    assert code == 0
    assert out.splitlines()[1] == "7 | 6,14,16 | 2,3,7 | 2 | 1 | 1"
    _, out, _ = run(capsys, "table", "eejl", "--ell", "37")
    assert out.splitlines()[1] == "37 | 6 | 12"


def test_json_delta_schema(capsys):
    code, out, _ = run(capsys, "table", "eml", "--ell", "5", "--format", "json")
    row = json.loads(out)["rows"][0]
    assert row["Cs"] == {"lower": [1], "upper": [40, 48], "exclude": [3]}


def test_grid_limits(capsys):
    code, out, _ = run(capsys, "table", "grid", "--ell-max", "7", "--d-max", "6")
    assert code == 0
    assert out.splitlines()[1:] == ["3 | 1 1 1 1 0 1", "5 | 1 1 0 1 1 1", "7 | 0 1 1 1 0 1"]


def test_queries(capsys):
    assert run(capsys, "query", "thm3", "--ell", "11", "--d", "10")[1] == "true; witness 5; minimal degrees 5\n"
    assert run(capsys, "query", "thm3", "--ell", "11", "--d", "7")[1].startswith("false;")
    code, out, _ = run(capsys, "query", "thm1", "--ell", "5", "--d", "8", "--M", "Z", "--format", "json")
    assert json.loads(out) == {"verdict": True, "witness": 4, "minimal_degrees": [4]}
    assert run(capsys, "query", "thm2", "--ell", "3", "--d", "1")[1].startswith("true;")
    out = run(capsys, "query", "thm3", "--ell", "13", "--d", "4", "--mode", "over_Q")[1]
    assert out == "true; witness 4; minimal degrees 3,4\n"


@pytest.mark.parametrize("argv", [
    ["table", "nope"],
    ["table", "rml", "--ell", "9"],
    ["table", "rml", "--ell", "2"],
    ["query", "thm1", "--ell", "5", "--d", "8"],
    ["query", "thm2", "--ell", "5", "--d", "8", "--M", "Z"],
    ["query", "thm3", "--ell", "5", "--d", "0"],
    ["verify", "everything"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "formulas", "--ell", "3,5")
    assert code == 0
    assert out.splitlines()[-1] == "48/48 checks passed"
    assert run(capsys, "verify", "catalog")[0] == 0


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "torsion", "--ell", "7", "--format", "json")
    checks = json.loads(out)
    assert code == 0 and all(c["passed"] for c in checks)


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("GL2DEGREES_BUDGET", "10")
    from gl2degrees import indexsets
    monkeypatch.setattr(indexsets, "_PROFILE_CACHE", {})
    code, _, err = run(capsys, "verify", "formulas", "--ell", "3")
    assert code == 3 and "budget" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gl2degrees", "table", "rml", "--ell", "3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[1] == "3 | 2 | 1 | 2 | 1 | 1"
