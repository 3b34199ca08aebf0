"""Drinfeld A-modules, the Carlitz module and torsion."""
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .field_arith.algebraic import AlgebraicElement, Ambient, berkowitz
from .field_arith.fq import GF
from .field_arith.linalg import inverse_over_k, nullspace_mod_p
from .field_arith.places import Place, newton_polygon
from .field_arith.polya import PolyA, factorize, is_irreducible, lcm, poly_ring, xgcd
from .field_arith.ratfunc import RatFunc
from .ore import OrePoly, as_field_coeff, ore_mul


@dataclass(frozen=True)
class TorsionPoint:
    value: object
    annihilator: PolyA

    def __str__(self):
        return f"{self.value} (annihilator {self.annihilator})"


class DrinfeldModule:
    """phi determined by phi_T, an Ore polynomial with D(phi_T) = T."""

    def __init__(self, phi_T, q=None):
        coeffs = phi_T.coeffs if isinstance(phi_T, OrePoly) else tuple(phi_T)
        if q is None:
            q = next(c.F.q for c in coeffs if not isinstance(c, int))
        self.q = q
        self.Fq = GF(q)
        self.A = poly_ring(q)
        self.phi_T = OrePoly([as_field_coeff(c, self.Fq) for c in coeffs])
        if self.phi_T.degree < 1:
            raise ValueError("phi_T must have tau-degree >= 1")
        if not (self.phi_T.D() == self.A.T):
            raise ValueError(f"D(phi_T) = {self.phi_T.D()} but must equal T")
        self.rank = self.phi_T.degree
        self.ambient = next((c.amb for c in self.phi_T.coeffs if isinstance(c, AlgebraicElement)), None)
        self._actions = {}

    @property
    def over_k(self):
        return self.ambient is None

    def __eq__(self, other):
        return isinstance(other, DrinfeldModule) and self.phi_T == other.phi_T

    def __hash__(self):
        return hash(self.phi_T)

    def __str__(self):
        return str(self.phi_T)

    def __repr__(self):
        return f"DrinfeldModule({self.phi_T})"

    def __reduce__(self):
        return (DrinfeldModule, (self.phi_T.coeffs, self.q))

    def is_carlitz(self):
        return self.rank == 1 and self.phi_T.mu() == 1 and self.over_k

    def action(self, a):
        """phi_a, by Horner in phi_T."""
        a = self.A(a)
        hit = self._actions.get(a)
        if hit is not None:
            return hit
        one = self.phi_T.coeffs[0] ** 0
        acc = OrePoly([])
        for c in reversed(a.c):
            acc = ore_mul(acc, self.phi_T) if acc else acc
            if c:
                acc = acc + OrePoly([one * PolyA.const(self.Fq, c)])
        self._actions[a] = acc
        return acc

    def step(self, x):
        """phi_T(x)."""
        return self.phi_T(x)

    def evaluate(self, a, x):
        """phi_a(x) = sum a_i phi_T^i(x), without forming phi_a."""
        a = self.A(a)
        acc = x * 0
        xi = x
        for i, c in enumerate(a.c):
            if i:
                xi = self.step(xi)
            if c:
                acc = acc + xi * PolyA.const(self.Fq, c)
        return acc


def carlitz(q):
    """C_T = T tau^0 + tau over k."""
    A = poly_ring(q)
    return DrinfeldModule([A.T, A.one], q)


def action(phi, a):
    return phi.action(a)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusReport:
    P: PolyA
    coefficients: tuple
    leading_is_one: bool
    lower_divisible: bool

    @property
    def passed(self):
        return self.leading_is_one and self.lower_divisible

    def as_dict(self):
        return {
            "P": str(self.P),
            "coefficients": [str(c) for c in self.coefficients],
            "leading_is_one": self.leading_is_one,
            "lower_divisible": self.lower_divisible,
            "pass": self.passed,
        }


def check_frobenius_congruence(phi, P):
    """Check C_P = tau^(deg P) mod P coefficientwise."""
    if not is_irreducible(P) or not P.is_monic():
        raise ValueError(f"{P} is not monic irreducible")
    Cp = phi.action(P)
    n = P.degree
    coeffs = Cp.coeffs
    lead = len(coeffs) == n + 1 and coeffs[-1].is_one()
    lower = True
    for c in coeffs[:-1]:
        if not c.is_poly() or c.num % P:
            lower = False
    return FrobeniusReport(P, tuple(coeffs), lead, lower)


def cyclotomic_field(q, P, name="l"):
    """k(Lambda_P) = k[X]/(C_P(X)/X) and its generator lambda (annihilator P)."""
    phi = carlitz(q)
    rep = check_frobenius_congruence(phi, P)
    if not rep.passed:
        raise AssertionError(f"Eisenstein certificate failed for {P}")
    A = poly_ring(q)
    f = [A.zero] * (q ** P.degree)
    for i, c in enumerate(rep.coefficients):
        f[q ** i - 1] = c.num
    amb = Ambient(f, certificate=f"Eisenstein at {P}", name=name)
    lam = amb.gen
    if phi.evaluate(P, lam):
        raise AssertionError("lambda is not P-torsion")
    return amb, TorsionPoint(lam, P)


# --------------------------------------------------------------------------


def annihilator(phi, x, multiple):
    """Monic generator of {a : phi_a(x) = 0}, given a nonzero element of it."""
    b = multiple.monic()
    if phi.evaluate(b, x):
        raise ValueError(f"{multiple} does not annihilate {x}")
    if not x:
        return b ** 0
    for P, e in factorize(b):
        for _ in range(e):
            c = b // P
            if phi.evaluate(c, x):
                break
            b = c
    return b


def _separable_part(amb):
    """(F0, e) with Fmon(Y) = F0(Y^(p^e)) and F0 separable."""
    F = list(amb.Fmon)
    p = amb.Fq.p
    e = 0
    while all(not c for i, c in enumerate(F) if i % p):
        F = F[::p]
        e += 1
    return F, e


def torsion_points_in(phi, a, ambient):
    """All x in the ambient with phi_a(x) = 0, each with its exact annihilator.

    phi must be defined over k.  The roots form an F_q-space; they are found
    as the kernel of x -> phi_a(x) on a finite F_q-space of candidates whose
    denominators and degrees are bounded by Newton polygons of phi_a(X)/X and
    the trace form of the ambient.
    """
    if not phi.over_k:
        raise NotImplementedError("torsion_points_in needs phi defined over k")
    a = phi.A(a)
    if not a:
        raise ValueError("a must be nonzero")
    if a.degree == 0:
        return [TorsionPoint(ambient.zero, a ** 0)]
    F0, e = _separable_part(ambient)
    if e == 0:
        values = _separable_roots(phi, a, ambient)
    else:
        # torsion is separable, so it lives in k(theta'^(p^e))
        sub = Ambient(F0, certificate="separable part", name="w")
        step = ambient.Fq.p ** e
        values = []
        for z in _separable_roots(phi, a, sub):
            nums = [ambient._zero] * ambient.d
            for u, m in enumerate(z.nums):
                nums[u * step] = m
            values.append(AlgebraicElement(ambient, nums, z.den))
    out = []
    for x in values:
        if phi.evaluate(a, x):
            raise AssertionError("spurious torsion root")
        out.append(TorsionPoint(x, annihilator(phi, x, a)))
    return out


def _power_sums(Fmon, count, Fq):
    # Newton identities for the monic F: p_k = sum of k-th powers of the roots
    d = len(Fmon) - 1
    c = Fmon
    ps = [PolyA.const(Fq, Fq.from_int(d))]
    for k in range(1, count):
        s = PolyA.const(Fq, 0)
        for i in range(1, min(k - 1, d) + 1):
            s = s + c[d - i] * ps[k - i]
        if k <= d:
            s = s + c[d - k].scale(Fq.from_int(k))
        ps.append(-s)
    return ps


def _min_root_valuation(coeffs, v):
    vals = newton_polygon(coeffs, v).root_valuations()
    return min(vals)


def _separable_roots(phi, a, amb):
    Fq, q, p, s = amb.Fq, amb.q, amb.Fq.p, amb.Fq.s
    d = amb.d
    A = phi.A
    Pa = phi.action(a)
    b = [as_field_coeff(c, Fq) for c in Pa.coeffs]
    # g(X) = phi_a(X)/X
    g = [A.zero] * (q ** (len(b) - 1))
    for i, c in enumerate(b):
        g[q ** i - 1] = c
    # denominator bound at finite places
    primes = set()
    for c in b:
        for part in (c.num, c.den):
            if part.degree > 0:
                primes.update(P for P, _ in factorize(part))
    pi = A.one
    for P in sorted(primes, key=PolyA.sort_key):
        sv = _min_root_valuation(g, Place(P))
        if sv < 0:
            pi = pi * P ** math.ceil(-sv)
    # trace form of the integral model
    ps = _power_sums(amb.Fmon, 2 * d - 1, Fq)
    M = [[ps[i + j] for j in range(d)] for i in range(d)]
    disc = berkowitz(M, A.one, A.zero)[0]
    if d % 2:
        disc = -disc
    if not disc:
        raise AssertionError("trace form degenerate on a separable ambient")
    Minv = inverse_over_k([[RatFunc.from_poly(x) for x in row] for row in M])
    adj = [[(x * disc) for x in row] for row in Minv]
    for row in adj:
        for x in row:
            if not x.is_poly():
                raise AssertionError("adjugate not integral")
    adj = [[x.num for x in row] for row in adj]
    # degree bounds at infinity
    inf = Place()
    s_inf = _min_root_valuation(g, inf)
    t_theta = -_min_root_valuation(amb.Fmon, inf)
    Z = pi.degree - s_inf
    L = []
    for j in range(d):
        best = -1
        for i in range(d):
            bound = Z + i * t_theta if i else Z
            if adj[j][i] and bound >= 0:
                best = max(best, adj[j][i].degree + math.floor(bound))
        L.append(best)
    Dn = (pi * disc).monic()
    # images of the F_p-basis g^u T^l theta'^j / Dn under phi_a
    r = len(b) - 1
    Dpows = [Dn ** (q ** i) for i in range(r + 1)]
    E = A.one
    for i, c in enumerate(b):
        if c:
            E = lcm(E, c.den * Dpows[i])
    weights = []
    for i, c in enumerate(b):
        if c:
            weights.append((i, c.num * (E // (c.den * Dpows[i]))))
    unknowns = [(j, l, u) for j in range(d) for l in range(L[j] + 1) for u in range(s)]
    if not unknowns:
        return [amb.zero]
    cols = []
    maxdeg = 0
    for j, l, u in unknowns:
        gu = Fq.pow(Fq.gen, u) if s > 1 else 1
        vec = [A.zero] * d
        for i, w in weights:
            tab = amb._frob_table(i)[j]
            mono = PolyA.const(Fq, gu).shift(l * q ** i) * w
            for t, x in enumerate(tab):
                if x:
                    vec[t] = vec[t] + mono * x
        cols.append(vec)
        maxdeg = max([maxdeg] + [v.degree for v in vec])
    width = maxdeg + 1
    mat = np.zeros((d * width * s, len(unknowns)), dtype=np.int64)
    for col, vec in enumerate(cols):
        for t, x in enumerate(vec):
            for k, code in enumerate(x.c):
                base = (t * width + k) * s
                for dgt in range(s):
                    mat[base + dgt, col] = code % p
                    code //= p
    kernel = nullspace_mod_p(mat, p)
    roots = []
    for coeffs in product(range(p), repeat=len(kernel)):
        w = [0] * len(unknowns)
        for cf, vec in zip(coeffs, kernel):
            if cf:
                w = [(x + cf * y) % p for x, y in zip(w, vec)]
        polys = [[0] * (L[j] + 1) for j in range(d)]
        for idx, (j, l, u) in enumerate(unknowns):
            if w[idx]:
                polys[j][l] += w[idx] * p ** u
        roots.append(AlgebraicElement(amb, [PolyA(Fq, cs) for cs in polys], Dn))
    return roots


def torsion_decompose(phi, delta, m):
    """Split torsion delta into parts killed by m^g and by the prime-to-m part b."""
    a = delta.annihilator
    if phi.evaluate(a, delta.value):
        raise ValueError("input is not torsion for its annihilator")
    m = m.monic()
    g = 0
    b = a
    while b.degree >= 1 and not (b % m):
        b = b // m
        g += 1
    mg = m ** g
    one, s, t = xgcd(b, mg)
    u, v = s * b, t * mg
    d1 = phi.evaluate(u, delta.value)
    d2 = phi.evaluate(v, delta.value)
    return (TorsionPoint(d1, annihilator(phi, d1, mg)),
            TorsionPoint(d2, annihilator(phi, d2, b)))
