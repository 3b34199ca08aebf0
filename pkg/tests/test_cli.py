import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import polys
from drinfeld_heights.cli import main
from drinfeld_heights.drinfeld import cyclotomic_field
from drinfeld_heights.field_arith.parse import (ParseError, parse_element, parse_ore, parse_poly,
                                                parse_xpoly)
from drinfeld_heights.field_arith.polya import poly_ring
from drinfeld_heights.field_arith.ratfunc import RatFunc

A2, A3 = poly_ring(2), poly_ring(3)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


# -- parser ---------------------------------------------------------------------


@given(polys(3, 6))
def test_parse_roundtrip(a):
    assert parse_poly(str(a), 3) == a


def test_parse_expressions():
    T = A2.T
    assert parse_element("(T^2+1)/T", 2) == RatFunc(T ** 2 + 1, T)
    assert parse_element("T^-2", 2) == RatFunc(A2.one, T ** 2)
    assert parse_poly("2T + 3", 3) == A3([0, 2])
    assert parse_poly("-(T+1)^2", 3) == -(A3.T + 1) ** 2
    assert parse_element("g^2 + g", 4).is_one()
    amb, lam = cyclotomic_field(2, T ** 2 + T + 1)
    x = parse_element("l^2 + l", 2, amb)
    assert x == lam.value ** 2 + lam.value


def test_parse_xpoly_and_ore():
    cs = parse_xpoly("X^2 - T", 3)
    assert len(cs) == 3 and cs[2].is_one()
    o = parse_ore("T*t0 + t2", 2)
    assert o.degree == 2 and str(o) == "T*t0 + t2"


@pytest.mark.parametrize("bad", ["", "T+", "(T", "T)", "1/0", "foo", "T^T", "X", "t1", "l", "T$"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_element(bad, 2)


# -- commands -----------------------------------------------------------------------


def test_height_examples():
    assert run("height", "--q", "2", "--elem", "T") == (0, "1\n")
    assert run("height", "--q", "3", "--minpoly", "X^2 - T") == (0, "1/2\n")
    assert run("height", "--q", "2", "--elem", "(T^2+1)/T") == (0, "2\n")


def test_height_json_echoes_minpoly():
    code, out = run("height", "--q", "2", "--P", "T^2+T+1", "--elem", "l", "--output", "json")
    d = json.loads(out)
    assert code == 0 and d["schema"] == 1
    assert d["height"] == "2/3" and d["min_poly"] == "X^3 + (T^2 + T + 1)*X + T^2 + T + 1"


def test_canon_examples():
    code, out = run("canon", "--q", "2", "--module", "carlitz", "--elem", "T")
    assert code == 0 and "annihilator T" in out
    code, out = run("canon", "--q", "2", "--module", "carlitz", "--elem", "0", "--output", "json")
    d = json.loads(out)
    assert d["hhat"]["lo"] == "0" and d["hhat"]["hi"] == "0" and d["torsion"]["torsion"]
    code, out = run("canon", "--q", "2", "--module", "T*t0+t2", "--elem", "1", "--tol", "1/8",
                    "--output", "json")
    d = json.loads(out)
    assert code == 0 and Fraction(d["hhat"]["hi"]) - Fraction(d["hhat"]["lo"]) <= Fraction(1, 8)


def test_canon_budget_exit_code():
    code, out = run("canon", "--q", "2", "--P", "T^2+T+1", "--elem", "l^2+l", "--budget", "1",
                    "--tol", "1/1000")
    assert code == 4 and "budget exceeded" in out


def test_verify_examples():
    assert run("verify", "frobenius", "--q", "2", "--maxdeg", "4")[0] == 0
    code, out = run("verify", "pigeonhole", "--q", "2", "--m", "T", "--e", "6", "--B", "3",
                    "--output", "json")
    d = json.loads(out)
    assert code == 0 and d["pass"] and all("a" in w and "b" in w for w in d["witnesses"])
    code, out = run("verify", "carlitz-bound", "--q", "2", "--P", "T^2+T+1", "--sample", "l+1",
                    "--output", "json")
    d = json.loads(out)
    assert code == 0 and d["witnesses"][0]["torsion"]
    code, out = run("verify", "carlitz-bound", "--q", "2", "--P", "T^2+T+1",
                    "--sample", "l^2+l")
    assert code == 0 and "margin_gt_1 = True" in out


def test_verify_json_report_fields():
    for check in ("lemclef1", "lemclef2", "accel", "representatives", "pigeonhole-refined"):
        code, out = run("verify", check, "--q", "2", "--output", "json", "--count", "5")
        d = json.loads(out)
        assert code == 0, check
        assert set(d) == {"schema", "check", "params", "witnesses", "pass", "margins"}


def test_exit_codes():
    assert run("verify", "nonsense")[0] == 2
    assert run("height", "--elem", "T+")[0] == 2
    assert run("height")[0] == 2
    assert run("height", "--q", "6", "--elem", "T")[0] == 2
    assert run("canon", "--tol", "0", "--elem", "T")[0] == 2
    # precondition q^e >= 2NB fails for e = 4, B = 3
    assert run("verify", "pigeonhole", "--q", "2", "--e", "4", "--B", "3")[0] == 3
    assert run("canon", "--q", "2", "--module", "t1", "--elem", "T")[0] == 2


def test_search_csv():
    code, out = run("search", "--q", "2", "--d", "1", "--D", "0")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "q,minpoly,degree,h_weil,hhat_lo,hhat_hi,torsion,iterations"
    assert lines[-1].startswith("# summary: no non-torsion")
    code, out = run("search", "--q", "2", "--d", "1", "--D", "2")
    assert "min positive hhat midpoint" in out.splitlines()[-1]


def test_verify_all_byte_identical():
    a = run("verify", "all", "--seed", "7", "--output", "json")
    b = run("verify", "all", "--seed", "7", "--output", "json")
    assert a == b and a[0] == 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "drinfeld_heights", "height", "--elem", "T^3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "3\n"


def test_canon_base_point_independence():
    ivs = []
    for base in ("T", "T+1", "T^2"):
        code, out = run("canon", "--q", "2", "--elem", "(T^3+1)/T", "--base", base,
                        "--output", "json")
        assert code == 0
        d = json.loads(out)["hhat"]
        ivs.append((Fraction(d["lo"]), Fraction(d["hi"])))
    assert max(lo for lo, _ in ivs) <= min(hi for _, hi in ivs)
    assert run("canon", "--q", "2", "--elem", "T", "--base", "1")[0] == 2
