"""Carlitz congruence parameters and the ultrametric inequalities at a place.

Everything is stated with valuations normalized at v (so v(P) = 1) and with
multisets of conjugate valuations of size [K:k]: two elements of the same
ambient then have their conjugates listed against the same embeddings, which
is what makes slot-wise comparisons meaningful.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from ..drinfeld import carlitz
from ..field_arith.algebraic import AlgebraicElement, conjugate_valuations, rational_ambient
from ..field_arith.places import Place, newton_polygon, ramification_bound
from ..field_arith.polya import PolyA, is_irreducible
from .report import Report

INF = math.inf


@dataclass(frozen=True)
class CongruenceParams:
    """nu = (q-1) deg_q / deg P, n = (q-1) deg_q, s = q-1 for the Carlitz module."""

    q: int
    P: PolyA
    deg_q: int

    def __post_init__(self):
        if not self.P.is_monic() or not is_irreducible(self.P):
            raise ValueError(f"{self.P} is not monic irreducible")
        if self.deg_q < 1:
            raise ValueError("deg_q must be positive")
        if ((self.q - 1) * self.deg_q) % self.P.degree:
            raise ValueError(
                f"nu = {self.q - 1}*{self.deg_q}/{self.P.degree} is not an integer")

    @property
    def s(self):
        return self.q - 1

    @property
    def n(self):
        return self.s * self.deg_q

    @property
    def nu(self):
        return self.n // self.P.degree

    @property
    def modulus(self):
        """P^nu, whose Carlitz action plays psi_{m^nu}."""
        return self.P ** self.nu

    def as_dict(self):
        return {"q": self.q, "P": str(self.P), "deg_q": self.deg_q,
                "nu": self.nu, "n": self.n, "s": self.s}


def check_congruence(params):
    """C_{P^nu} = tau^n mod P: monic of tau-degree n with lower coefficients in (P)."""
    C = carlitz(params.q)
    coeffs = C.action(params.modulus).coeffs
    lead = len(coeffs) == params.n + 1 and coeffs[-1].is_one()
    bad = [i for i, c in enumerate(coeffs[:-1]) if not c.is_poly() or c.num % params.P]
    return Report("congruence", params.as_dict(), lead and not bad,
                  {"tau_degree": len(coeffs) - 1, "non_divisible": bad})


# --------------------------------------------------------------------------


def _as_element(x):
    if isinstance(x, AlgebraicElement):
        return x
    F = x.F
    return rational_ambient(F.q)(x)


def slot_valuations(x, v):
    """Sorted conjugate valuations of x at v, one per embedding."""
    x = _as_element(x)
    if not x:
        return [INF] * x.amb.d
    return conjugate_valuations(x, v, full=True)


def pole_order(s):
    """max(0, -s) with s possibly infinite."""
    if s == INF:
        return Fraction(0)
    return max(Fraction(0), -Fraction(s))


def _profile(vals):
    return sorted(pole_order(s) for s in vals)


def check_lemclef1(params, x, v):
    """max(1, |psi(x)|_w) = max(1, |x|_w^(q^n)) at all w | v, as multisets of pole orders."""
    if v.is_infinite:
        raise ValueError("the place must be finite")
    C = carlitz(params.q)
    y = C.evaluate(params.modulus, x)
    Qn = params.q ** params.n
    lhs = _profile(slot_valuations(y, v))
    rhs = sorted(Qn * p for p in _profile(slot_valuations(x, v)))
    return Report("lemclef1", {**params.as_dict(), "v": str(v), "x": str(x)}, lhs == rhs,
                  {"pole_orders_psi_x": lhs, "q^n_pole_orders_x": rhs})


def check_lemclef2(params, x, v=None):
    """v(psi(x) - x^(q^n)) >= 1 - q^(n-1) max(0, -v(x)) slot-wise after sorting, at v = (P)."""
    v = Place(params.P) if v is None else v
    if v.P != params.P:
        raise ValueError("lemclef2 is stated at the place of P")
    C = carlitz(params.q)
    y = C.evaluate(params.modulus, x)
    xe = _as_element(x)
    diff = _as_element(y) - xe.frob(params.n)
    lhs = slot_valuations(diff, v)
    Qn1 = params.q ** (params.n - 1)
    rhs = sorted(1 - Qn1 * pole_order(s) for s in slot_valuations(xe, v))
    ok = all(a >= b for a, b in zip(lhs, rhs))
    margins = [None if a == INF else a - b for a, b in zip(lhs, rhs)]
    ram = 1
    if diff:
        ram = ramification_bound(newton_polygon(diff.charpoly(), v))
    return Report("lemclef2", {**params.as_dict(), "v": str(v), "x": str(x)}, ok,
                  {"lhs": lhs, "rhs": rhs, "ramification_lower_bound": ram},
                  {"slot_margins": margins})


def _constant(vals):
    return len(set(vals)) <= 1


def check_acceleration(params, x, y, c, ls=(0, 1, 2), v=None):
    """Acceleration: a congruence of depth c between x and y deepens by l under C_{P^(nu l)}.

    Hypothesis: v(x-y) >= c - A(x) - B(y) at every w | v, with A = max(0, -v).
    Conclusion: v(psi_l(x-y)) >= c + l - A(psi_l x) - B(psi_l y).
    Without a pairing of conjugates across elements the hypothesis is checked in
    a sufficient form and the conclusion in a necessary form; both are exact when
    the relevant multisets are constant.
    """
    v = Place(params.P) if v is None else v
    C = carlitz(params.q)
    xe, ye = _as_element(x), _as_element(y)
    base = {**params.as_dict(), "v": str(v), "x": str(x), "y": str(y), "c": c}
    dv = slot_valuations(xe - ye, v)
    xv, yv = slot_valuations(xe, v), slot_valuations(ye, v)
    A = [pole_order(s) for s in xv]
    B = [pole_order(s) for s in yv]
    hyp = min(dv) >= c - min(A) - min(B)
    exact = _constant(dv) and _constant(A) and _constant(B)
    if not hyp:
        return Report("accel", base, True,
                      {"status": "hypothesis not satisfied", "min_v(x-y)": min(dv),
                       "threshold": c - min(A) - min(B)})
    results = []
    ok = True
    for l in ls:
        m = params.P ** (params.nu * l)
        px, py = C.evaluate(m, xe), C.evaluate(m, ye)
        dl = slot_valuations(px - py, v)
        Al = [pole_order(s) for s in slot_valuations(px, v)]
        Bl = [pole_order(s) for s in slot_valuations(py, v)]
        need = c + l - max(Al) - max(Bl)
        good = min(dl) >= need
        exact_l = exact and _constant(dl) and _constant(Al) and _constant(Bl)
        results.append({"l": l, "min_v": min(dl), "required": need, "pass": good,
                        "exact": exact_l})
        ok = ok and good
    return Report("accel", base, ok, {"status": "checked", "levels": results,
                                      "hypothesis_exact": exact})
