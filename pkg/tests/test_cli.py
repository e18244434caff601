import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from planebranch.cli import main

SCHEMAS = Path(__file__).resolve().parents[1] / "schemas"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def ok(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    data = json.loads(out)
    schema = json.loads((SCHEMAS / f"{argv[0]}.v1.json").read_text())
    jsonschema.validate(data, schema)
    assert data["meta"]["schema"] == f"planebranch/{argv[0]}/v1"
    return data


# -- invariants ------------------------------------------------------------------

def test_invariants_param(capsys):
    d = ok(capsys, "invariants", "--param", "x=t^8; y=t^20+t^30+t^35")
    assert d["semigroup"] == [8, 20, 50, 105]
    assert d["puiseux_pairs"] == [[2, 5], [2, 15], [2, 35]]


def test_invariants_pairs(capsys):
    d = ok(capsys, "invariants", "--pairs", "(2,3)")
    assert d["char_exponents"] == [2, 3] and d["conductor"] == 2


def test_invariants_char(capsys):
    d = ok(capsys, "invariants", "--char", "5,13")
    assert d["puiseux_pairs"] == [[5, 13]] and d["conductor"] == 48


def test_invariants_semigroup(capsys):
    d = ok(capsys, "invariants", "--semigroup", "8,20,50,105")
    assert d["char_exponents"] == [8, 20, 30, 35]


# -- resolve -------------------------------------------------------------------------

def test_resolve_monomial_equation(capsys):
    d = ok(capsys, "resolve", "--equation", "y^5-x^13")
    assert d["N"] == 6 and d["strict_mults"] == [5, 5, 3, 2, 1, 1]
    assert d["proximity"][1] == [0, 1, -1, -1, 0, 0]
    assert d["inverse"][0] == [1, 1, 1, 2, 3, 5]


def test_resolve_cusp_with_dot(capsys, tmp_path):
    path = tmp_path / "out.dot"
    d = ok(capsys, "resolve", "--char", "2,3", "--dot", str(path))
    assert d["N"] == 3
    text = path.read_text()
    assert text.startswith("graph") and text.count("--") == 3  # two tree edges plus the curve
    assert all(f"D{i} [" in text for i in (1, 2, 3))


# -- dim -----------------------------------------------------------------------------

def test_dim_four_exponent_curve(capsys):
    d = ok(capsys, "dim", "--param", "x=t^8; y=t^20+t^30+t^35")
    assert d["total"] == 20 and d["sigmas"][:6] == [6, 9, 1, 2, 1, 1]


def test_dim_n_n_plus_1(capsys):
    assert ok(capsys, "dim", "--char", "5,6")["total"] == 1


def test_dim_cusp(capsys):
    d = ok(capsys, "dim", "--char", "2,3")
    assert d["total"] == 0 and d["rigid"] is True


# -- saito -----------------------------------------------------------------------------

@pytest.mark.parametrize("eq, nu", [("y^6-x^7", 1), ("y^6-x^7+x^4*y^4", 2)])
def test_saito_equations(capsys, eq, nu):
    assert ok(capsys, "saito", "--equation", eq)["nu_min"] == nu


def test_saito_generic_class(capsys):
    d = ok(capsys, "saito", "--char", "4,5", "--generic", "--seeds", "2", "--no-stability")
    assert d["expected"] == 2 and all(r["nu_min"] == 2 for r in d["results"])


def test_saito_basis_check(capsys):
    d = ok(capsys, "saito", "--equation", "y^6-x^7", "--basis-check", "6*x*dy-7*y*dx", "6*y^5*dy-7*x^6*dx")
    assert d["criterion"]["verdict"] == "basis" and d["criterion"]["unit"] == "-42"


# -- tree --------------------------------------------------------------------------------

def test_tree_cusp(capsys, tmp_path):
    path = tmp_path / "tree.dot"
    d = ok(capsys, "tree", "--char", "2,3", "--direction", "none", "--dot", str(path))
    assert d["tree"]["numbering"] == [1, 1, 0]
    assert path.read_text() == d["dot"]


def test_tree_5_13(capsys):
    d = ok(capsys, "tree", "--char", "5,13", "--direction", "none")
    assert d["tree"]["N"] == 6 and d["properties"]["all_pass"]


def test_tree_cusp_both_axes(capsys):
    d = ok(capsys, "tree", "--char", "2,3", "--direction", "xy")
    assert d["delta"][0] == 2 and len(d["tree"]["direction_attach"]) == 2


def test_tree_custom_direction(capsys):
    d = ok(capsys, "tree", "--char", "2,3", "--direction", "custom",
           "--direction-param", "x=t; y=t", "--direction-param", "x=0; y=t")
    assert d["delta"] == [2, 1, 2] and d["p"] == [0, 1, 0]


# -- rigid -------------------------------------------------------------------------------

def test_rigid_mult_3(capsys):
    d = ok(capsys, "rigid", "--max-mult", "3")
    assert all(c["rigid"] for c in d["classes"])


def test_rigid_mult_4(capsys):
    d = ok(capsys, "rigid", "--max-mult", "4", "--bound", "30")
    four = [c for c in d["rigid"] if c[0] == 4]
    assert four == [[4, 5]] + [[4, 6, k] for k in range(7, 24, 2)] + [[4, 7]]


def test_rigid_mult_5(capsys):
    d = ok(capsys, "rigid", "--max-mult", "5", "--bound", "20")
    assert not [c for c in d["rigid"] if c[0] == 5]


# -- contract ---------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["dim", "--char", "6,7", "--seed", "3"],
    ["resolve", "--param", "x=t^4; y=t^6+t^7"],
    ["saito", "--char", "2,5", "--generic", "--seeds", "2"],
])
def test_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)


@pytest.mark.parametrize("argv, code, kind", [
    (["invariants", "--char", "5,"], 2, "parse"),
    (["dim", "--equation", "y^2-x^3+1"], 2, "parse"),
    (["resolve", "--char", "2,3", "--truncation", "3"], 3, "math"),
    (["invariants", "--char", "4,6"], 2, "parse"),
    (["saito", "--equation", "y^6-x^7", "--degree-bound", "1", "--jet-order", "3"], 4, "bound"),
])
def test_exit_codes(capsys, argv, code, kind):
    c, out, err = run(capsys, *argv)
    assert c == code and out == ""
    assert json.loads(err)["error"] == kind


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "invariants", "--char", "5,")
    assert json.loads(err)["position"] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "planebranch.cli", "invariants", "--pairs", "(2,3)"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["conductor"] == 2
