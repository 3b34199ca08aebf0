import pytest
from hypothesis import given, strategies as st

from conftest import polys, ratfuncs
from drinfeld_heights.drinfeld import (DrinfeldModule, annihilator, carlitz,
                                       check_frobenius_congruence, cyclotomic_field,
                                       torsion_decompose, torsion_points_in)
from drinfeld_heights.field_arith.algebraic import Ambient, rational_ambient
from drinfeld_heights.field_arith.polya import irreducibles_up_to, poly_ring
from drinfeld_heights.field_arith.ratfunc import RatFunc
from drinfeld_heights.ore import OrePoly, associated_additive_polynomial, ore_mul, right_divmod

A2, A3 = poly_ring(2), poly_ring(3)


def ore_polys(q, max_len=4):
    return st.lists(ratfuncs(q, 2), min_size=0, max_size=max_len).map(OrePoly)


# -- twisted polynomials --------------------------------------------------


@given(ore_polys(3), ore_polys(3), ore_polys(3))
def test_ore_ring_axioms(P, Q, S):
    assert (P * Q) * S == P * (Q * S)
    assert P * (Q + S) == P * Q + P * S


@given(ore_polys(2), ore_polys(2), ratfuncs(2, 3))
def test_product_is_composition(P, Q, x):
    # (PQ)(x) = P(Q(x)) for additive polynomials
    assert (P * Q)(x) == P(Q(x))


def test_tau_twists_scalars():
    T = RatFunc.from_poly(A3.T)
    one = RatFunc.from_poly(A3.one)
    tau = OrePoly.tau(one)
    assert tau * OrePoly([T]) == OrePoly([T * 0, T ** 3])
    assert T * tau == OrePoly([T * 0, T])


@given(ore_polys(3, 5), ore_polys(3, 3).filter(bool))
def test_right_division(P, Q):
    S, Rm = right_divmod(P, Q)
    assert S * Q + Rm == P
    assert Rm.degree < Q.degree


def test_associated_additive_polynomial():
    C = carlitz(2)
    f = associated_additive_polynomial(C.action(A2.T ** 2))
    # C_{T^2} = T^2 + (T^2 + T) tau + tau^2  ->  T^2 X + (T^2+T) X^2 + X^4
    assert f.degree == 4
    assert f[1] == RatFunc.from_poly(A2.T ** 2)
    assert f[2] == RatFunc.from_poly(A2.T ** 2 + A2.T)


# -- Drinfeld modules -------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3])
@given(data=st.data())
def test_action_is_ring_homomorphism(q, data):
    phi = carlitz(q) if q == 2 else DrinfeldModule([A3.T, A3.T + 1, A3.one], 3)
    a = data.draw(polys(q, 3))
    b = data.draw(polys(q, 3))
    assert phi.action(a * b) == phi.action(a) * phi.action(b)
    assert phi.action(a + b) == phi.action(a) + phi.action(b)
    x = data.draw(ratfuncs(q, 2))
    assert phi.evaluate(a, x) == phi.action(a)(x)


def test_module_requires_constant_term_T():
    with pytest.raises(ValueError):
        DrinfeldModule([A2.T + 1, A2.one], 2)
    with pytest.raises(ValueError):
        DrinfeldModule([A2.T], 2)


def test_carlitz_small_actions():
    C = carlitz(2)
    assert str(C.phi_T) == "T*t0 + t1"
    assert C.is_carlitz()
    assert C.action(A2.T ** 2).coeffs[1] == RatFunc.from_poly(A2.T ** 2 + A2.T)


@pytest.mark.parametrize("q", [2, 3])
def test_frobenius_congruence_small(q):
    C = carlitz(q)
    for P in irreducibles_up_to(C.Fq, 3):
        assert check_frobenius_congruence(C, P).passed


def test_frobenius_rejects_reducible():
    with pytest.raises(ValueError):
        check_frobenius_congruence(carlitz(2), A2.T ** 2)


def test_cyclotomic_polynomial_form():
    # C_P(X)/X = X^3 + P X + P for q = 2, P = T^2 + T + 1
    T = A2.T
    P = T ** 2 + T + 1
    amb, lam = cyclotomic_field(2, P)
    assert amb.f == (P, P, A2.zero, A2.one)
    assert lam.annihilator == P


@pytest.mark.parametrize("q,Pc", [(2, [1, 1]), (2, [0, 1]), (2, [1, 1, 1]), (3, [0, 1]),
                                  (3, [1, 0, 1])])
def test_cyclotomic_torsion_is_complete(q, Pc):
    A = poly_ring(q)
    P = A(Pc)
    amb, lam = cyclotomic_field(q, P)
    C = carlitz(q)
    pts = torsion_points_in(C, P, amb)
    assert len(pts) == q ** P.degree
    assert len({p.value for p in pts}) == len(pts)
    for p in pts:
        assert not C.evaluate(P, p.value)
        assert not C.evaluate(p.annihilator, p.value)
    gens = [p for p in pts if p.annihilator == P]
    assert len(gens) == q ** P.degree - 1


def test_rational_torsion_q2():
    C = carlitz(2)
    k = rational_ambient(2)
    T = A2.T
    pts = torsion_points_in(C, T ** 2 + T, k)
    assert sorted(str(p.value) for p in pts) == ["0", "1", "T", "T + 1"]
    assert annihilator(C, k(A2.one), T ** 2 + T) == T ** 2 + T


def test_torsion_in_inseparable_ambient():
    # X^2 - T over F_2 is purely inseparable; torsion still comes out right
    C = carlitz(2)
    amb = Ambient([A2.T, A2.zero, A2.one])
    pts = torsion_points_in(C, A2.T, amb)
    assert sorted(str(p.value) for p in pts) == ["0", "T"]


def test_torsion_decompose():
    C = carlitz(2)
    T = A2.T
    P = T ** 2 + T + 1
    amb, lam = cyclotomic_field(2, P)
    x = amb(T) + lam.value  # killed by T * P
    from drinfeld_heights.drinfeld import TorsionPoint

    d = TorsionPoint(x, annihilator(C, x, T * P))
    d1, d2 = torsion_decompose(C, d, T)
    assert d1.value + d2.value == x
    assert d1.annihilator == T and d2.annihilator == P
