import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import polys, ratfuncs
from drinfeld_heights.field_arith.fq import GF
from drinfeld_heights.field_arith.linalg import inverse_over_k, nullspace_mod_p, rank_mod_p
from drinfeld_heights.field_arith.polya import (PolyA, factorize, gcd, irreducibles_of_degree,
                                                is_irreducible, lcm, necklace_count, poly_ring,
                                                powmod, xgcd)
from drinfeld_heights.field_arith.ratfunc import RatFunc

T_sym = sympy.Symbol("T")


def to_sympy(a):
    return sympy.Poly(list(reversed(a.c)) or [0], T_sym, modulus=a.F.p)


# -- F_q ------------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms_exhaustive(q):
    F = GF(q)
    els = list(F.elements())
    for a, b in itertools.product(els, els):
        assert F.add[a][b] == F.add[b][a]
        assert F.mul[a][b] == F.mul[b][a]
        assert F.add[F.sub[a][b]][b] == a
    for a in F.units():
        assert F.mul[a][F.inv[a]] == 1
        assert F.pow(a, q - 1) == 1
    for a in els:
        assert F.pow(F.pth_root(a), F.p) == a


def test_gf4_generator_relation():
    F = GF(4)
    g = F.gen
    assert F.add[F.mul[g][g]][g] == 1  # g^2 + g + 1 = 0
    assert F.fmt(g) == "g"


# -- A = F_q[T] ------------------------------------------------------------


@given(polys(3), polys(3), polys(3))
def test_ring_axioms_q3(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == a * 0


@given(polys(2, 8), polys(2, 5, nonzero=True))
def test_divmod_matches_sympy(a, b):
    qq, r = divmod(a, b)
    assert a == qq * b + r
    assert r.degree < b.degree
    sq, sr = sympy.div(to_sympy(a), to_sympy(b))
    assert to_sympy(qq) == sq and to_sympy(r) == sr


@given(polys(3, 6), polys(3, 6))
def test_gcd_and_xgcd(a, b):
    g, s, t = xgcd(a, b)
    assert s * a + t * b == g
    if a or b:
        assert g.is_monic()
        assert not (a % g) and not (b % g)
        assert to_sympy(g) == sympy.gcd(to_sympy(a), to_sympy(b)).monic()
    if a and b:
        assert lcm(a, b) * g == (a * b).monic()
    assert gcd(a, b) == g


@given(polys(2, 9, nonzero=True))
def test_factorize_matches_sympy(a):
    fs = factorize(a)
    prod = PolyA.const(a.F, a.lc)
    for f, m in fs:
        assert f.is_monic() and is_irreducible(f)
        prod = prod * f ** m
    assert prod == a
    _, sf = sympy.factor_list(to_sympy(a).as_expr(), T_sym, modulus=2)
    assert sum(m for _, m in fs) == sum(m for _, m in sf)


@given(polys(5, 5, nonzero=True))
def test_irreducibility_matches_sympy(a):
    assert is_irreducible(a) == (a.degree >= 1 and to_sympy(a).is_irreducible)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 4), (2, 7), (3, 3), (4, 2), (9, 2)])
def test_irreducible_counts_match_necklace_formula(q, n):
    F = GF(q)
    irr = irreducibles_of_degree(F, n)
    assert len(irr) == necklace_count(q, n)
    assert all(P.is_monic() and P.degree == n for P in irr)


def test_irreducibles_cache_directory(tmp_path, monkeypatch):
    import json

    from drinfeld_heights.field_arith import polya

    monkeypatch.setenv("DRINFELD_HEIGHTS_CACHE", str(tmp_path))
    monkeypatch.setattr(polya, "_IRR_CACHE", {})
    irr = polya.irreducibles_of_degree(GF(5), 3)
    files = list(tmp_path.iterdir())
    assert files and json.loads(files[0].read_text())
    assert len(irr) == 40


@given(polys(3, 4), st.integers(0, 40), polys(3, 3, nonzero=True))
def test_powmod(a, n, m):
    assert powmod(a, n, m) == (a ** n) % m


@given(polys(3, 5))
def test_frobenius_is_qth_power(a):
    assert a.frob(1) == a ** 3
    assert a.frob(2) == a ** 9


def test_poly_formatting():
    A = poly_ring(2)
    T = A.T
    assert str(T ** 2 + T + 1) == "T^2 + T + 1"
    assert str(A.zero) == "0"


# -- k = F_q(T) ----------------------------------------------------------------


@given(ratfuncs(3), ratfuncs(3), ratfuncs(3))
def test_ratfunc_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x - x == x * 0
    if x:
        assert x * x.inverse() == RatFunc.from_poly(poly_ring(3).one)
        assert (y / x) * x == y


@given(ratfuncs(2, 6))
def test_ratfunc_normal_form(x):
    assert x.den.is_monic()
    assert gcd(x.num, x.den).is_one()
    assert x.height() == max(x.num.degree, x.den.degree, 0)


# -- linear algebra -------------------------------------------------------------


@given(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_mod_p_brute_force(rows):
    vecs = nullspace_mod_p(rows, 5)
    for v in vecs:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) % 5 == 0
    # brute force: the kernel has exactly 5^dim elements
    count = sum(all(sum(a * b for a, b in zip(r, v)) % 5 == 0 for r in rows)
                for v in itertools.product(range(5), repeat=4))
    assert count == 5 ** len(vecs)
    assert rank_mod_p(rows, 5) == 4 - len(vecs)


def test_inverse_over_k(rng):
    A = poly_ring(3)
    M = [[RatFunc.from_poly(A.random(rng, 2)) for _ in range(3)] for _ in range(3)]
    M[0][0] = M[0][0] + RatFunc.from_poly(A.T ** 5)
    M[1][1] = M[1][1] + RatFunc.from_poly(A.T ** 7)
    M[2][2] = M[2][2] + RatFunc.from_poly(A.T ** 11)
    N = inverse_over_k(M)
    for i in range(3):
        for j in range(3):
            s = sum((M[i][k] * N[k][j] for k in range(3)), RatFunc.from_poly(A.zero))
            assert s == RatFunc.from_poly(A.one if i == j else A.zero)
