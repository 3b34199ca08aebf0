"""Weil heights, canonical heights, the gamma bound and the torsion decision.

Heights are in log_q units, so every value is an exact rational.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .drinfeld import DrinfeldModule, TorsionPoint, annihilator
from .field_arith.algebraic import (
    AlgebraicElement, Ambient, certify_irreducible, content, min_poly, primitive_part)
from .field_arith.places import Place, newton_polygon, support, valuation
from .field_arith.polya import PolyA, gcd, poly_ring
from .field_arith.ratfunc import RatFunc
from .field_arith.xpoly import format_xpoly
from .ore import OrePoly, ore_mul


class HeightValue(Fraction):
    """An exact height value (a nonnegative Fraction)."""


class BudgetExceeded(Exception):
    """Raised when an iteration runs past its budget; carries the partial result."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class Budget:
    max_iterations: int = 20
    max_words: int = 10 ** 7


DEFAULT_BUDGET = Budget()

# --------------------------------------------------------------------------
# Weil height


def _size(x):
    if isinstance(x, AlgebraicElement):
        return x.words()
    if isinstance(x, RatFunc):
        return len(x.num) + len(x.den)
    return len(x)


def _rational_height(r):
    if isinstance(r, int):
        return Fraction(0)
    if isinstance(r, PolyA):
        return Fraction(max(r.degree, 0))
    return r.height()


def weil_height(x):
    """h(x) from the characteristic polynomial of x.

    With x = N/den and N integral with characteristic polynomial sum c_i Y^i,
    the finite part is deg lc of the primitive part of sum c_i den^i X^i and
    the infinite part comes from the Newton polygon at infinity.
    """
    if not isinstance(x, AlgebraicElement):
        return HeightValue(_rational_height(x))
    if x.is_rational():
        return HeightValue(_rational_height(x.to_ratfunc()))
    d = x.amb.d
    cp = x.integral_charpoly()
    den = x.den
    dd = den.degree
    finite = d * dd
    if dd > 0:
        g = den ** d
        dp = den ** 0
        for c in cp[:d]:
            if c:
                g = gcd(g, c * dp)
                if g.is_one():
                    break
            dp = dp * den
        finite -= g.degree
    vals = newton_polygon(cp, Place()).root_valuations()
    inf = sum((max(Fraction(0), -(s + dd)) for s in vals), Fraction(0))
    return HeightValue((finite + inf) / d)


def weil_height_by_places(x):
    """Oracle: (1/n) sum of deg v * max(0, -w) over conjugate valuations w at the
    places dividing some coefficient of the minimal polynomial, and at infinity."""
    if not isinstance(x, AlgebraicElement):
        x = RatFunc(x) if not isinstance(x, RatFunc) else x
        coeffs = [-x, 1]
        mp = primitive_part(coeffs, x.F)
    else:
        mp = min_poly(x).coeffs
    n = len(mp) - 1
    primes = set()
    for c in mp:
        if c and c.degree > 0:
            primes.update(support(c))
    total = Fraction(0)
    for v in [Place()] + [Place(P) for P in sorted(primes, key=PolyA.sort_key)]:
        vals = newton_polygon(mp, v).root_valuations()
        total += v.degree * sum((max(Fraction(0), -s) for s in vals), Fraction(0))
    return HeightValue(total / n)


# --------------------------------------------------------------------------
# gamma bound


@dataclass(frozen=True)
class GammaBound:
    gamma: Fraction
    c_up: Fraction
    c_low: Fraction
    method: str

    @property
    def c(self):
        return max(self.c_up, self.c_low)


def _distortion_over_k(coeffs, q):
    """(c_up, c_low) for x -> sum a_i x^(q^i) with a_i in k."""
    r = len(coeffs) - 1
    places = {Place()}
    for a in coeffs:
        if a:
            for P in support(a):
                places.add(Place(P))
    c_up = Fraction(0)
    c_low = Fraction(0)
    Q = q ** r
    for v in places:
        alpha = {i: -valuation(v, a) for i, a in enumerate(coeffs) if a}
        ar = alpha[r]
        up = max([0] + list(alpha.values()))
        low = Fraction(max(0, -ar))
        for i, ai in alpha.items():
            if i < r and ai > ar:
                low = max(low, Fraction(Q * (ai - ar), Q - q ** i))
        c_up += v.degree * up
        c_low += v.degree * low
    return c_up, c_low


def _distortion_algebraic(coeffs, q):
    heights = [weil_height(a) for a in coeffs]
    r = len(coeffs) - 1
    c_up = sum(heights, Fraction(0))
    ratio = Fraction(q, q - 1)
    c_low = (1 + ratio) * heights[r] + ratio * sum(heights[:r], Fraction(0))
    return c_up, c_low


def additive_gamma(coeffs, q):
    """gamma for iterating x -> sum a_i x^(q^i): max(1, c/(q^r - 1))."""
    r = len(coeffs) - 1
    if all(not isinstance(a, AlgebraicElement) or a.is_rational() for a in coeffs):
        ks = [a.to_ratfunc() if isinstance(a, AlgebraicElement) else a for a in coeffs]
        c_up, c_low = _distortion_over_k(ks, q)
        method = "local"
    else:
        c_up, c_low = _distortion_algebraic(coeffs, q)
        method = "coefficient heights"
    c = max(c_up, c_low)
    return GammaBound(max(Fraction(1), c / (q ** r - 1)), c_up, c_low, method)


def gamma_bound(phi, base=None):
    """Certified gamma with |hhat - h| <= gamma, from the one-step distortion of phi_base."""
    P = phi.phi_T if base is None else phi.action(base)
    return additive_gamma(P.coeffs, phi.q)


# --------------------------------------------------------------------------
# canonical height


@dataclass(frozen=True)
class HeightInterval:
    lo: Fraction
    hi: Fraction
    iterations: int
    gamma: Fraction

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains(self, t):
        return self.lo <= t <= self.hi

    def intersects(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def scaled(self, s):
        return HeightInterval(self.lo * s, self.hi * s, self.iterations, self.gamma)

    def as_dict(self):
        return {"lo": str(self.lo), "hi": str(self.hi), "iterations": self.iterations,
                "gamma": str(self.gamma)}


def canonical_height(phi, x, tol, budget=DEFAULT_BUDGET, base=None):
    """Certified interval for hhat_phi(x) of width <= tol."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    base = phi.A.T if base is None else phi.A(base)
    if base.degree < 1:
        raise ValueError("base point must be nonconstant")
    gamma = gamma_bound(phi, None if base == phi.A.T else base).gamma
    Q = phi.q ** (phi.rank * base.degree)
    step = phi.step if base == phi.A.T else (lambda y: phi.evaluate(base, y))
    xn = x
    n = 0
    scale = Fraction(1)
    while True:
        if not xn:
            return HeightInterval(Fraction(0), Fraction(0), n, gamma)
        h = weil_height(xn)
        lo = max(Fraction(0), (h - gamma) * scale)
        hi = (h + gamma) * scale
        if hi - lo <= tol:
            return HeightInterval(lo, hi, n, gamma)
        if n >= budget.max_iterations or _size(xn) > budget.max_words:
            partial = HeightInterval(lo, hi, n, gamma)
            raise BudgetExceeded(
                f"budget exhausted after {n} iterations at width {hi - lo}", partial)
        xn = step(xn)
        n += 1
        scale /= Q


# --------------------------------------------------------------------------
# torsion decision


@dataclass(frozen=True)
class TorsionCertificate:
    torsion: bool
    index: int
    annihilator: PolyA = None
    height: Fraction = None
    gamma: Fraction = None
    repeat_of: int = None

    def as_dict(self):
        out = {"torsion": self.torsion, "index": self.index, "gamma": str(self.gamma)}
        if self.torsion:
            out["annihilator"] = str(self.annihilator)
            out["repeat_of"] = self.repeat_of
        else:
            out["height"] = str(self.height)
        return out


def is_torsion(phi, x, max_steps=10 ** 4):
    """Exact torsion decision by iterating phi_T.

    Non-torsion once some h(x_i) > gamma; torsion once x_j = x_i for i < j, in
    which case T^j - T^i kills x and the annihilator is cut down from it.
    """
    gamma = gamma_bound(phi).gamma
    T = phi.A.T
    if not x:
        return TorsionCertificate(True, 0, T ** 0, Fraction(0), gamma, 0)
    seen = {}
    xi = x
    for i in range(max_steps):
        h = weil_height(xi)
        if h > gamma:
            return TorsionCertificate(False, i, None, h, gamma)
        j = seen.get(xi)
        if j is not None:
            mult = T ** i - T ** j
            ann = annihilator(phi, x, mult)
            return TorsionCertificate(True, i, ann, Fraction(0), gamma, j)
        seen[xi] = i
        xi = phi.step(xi)
    raise BudgetExceeded(f"torsion decision undecided after {max_steps} steps")


# --------------------------------------------------------------------------
# property checks


@dataclass
class IntervalCheck:
    name: str
    passed: bool
    intervals: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def as_dict(self):
        out = {"check": self.name, "pass": self.passed,
               "intervals": {k: v.as_dict() for k, v in sorted(self.intervals.items())}}
        out.update(self.extra)
        return out


def check_functional_equation(phi, x, a, tol, budget=DEFAULT_BUDGET):
    """hhat(phi_a x) against q^(r deg a) hhat(x)."""
    a = phi.A(a)
    if a.degree < 1:
        raise ValueError("a must be nonconstant")
    Q = phi.q ** (phi.rank * a.degree)
    tol = Fraction(tol)
    I1 = canonical_height(phi, phi.evaluate(a, x), tol, budget)
    I2 = canonical_height(phi, x, tol / Q, budget).scaled(Q)
    return IntervalCheck("functional_equation", I1.intersects(I2),
                         {"hhat(phi_a x)": I1, "Q*hhat(x)": I2},
                         {"a": str(a), "Q": Q})


def check_translation_invariance(phi, x, delta, tol, budget=DEFAULT_BUDGET):
    """hhat(x + delta) = hhat(x) for torsion delta, plus subadditivity."""
    d = delta.value if isinstance(delta, TorsionPoint) else delta
    if isinstance(x, AlgebraicElement) and isinstance(d, AlgebraicElement) and x.amb != d.amb:
        raise ValueError("x and delta live in different ambients")
    s = x + d
    I_sum = canonical_height(phi, s, tol, budget)
    I_x = canonical_height(phi, x, tol, budget)
    I_d = canonical_height(phi, d, tol, budget)
    invariant = I_sum.intersects(I_x)
    subadd = I_sum.lo <= I_x.hi + I_d.hi
    return IntervalCheck("translation_invariance", invariant and subadd,
                         {"hhat(x+delta)": I_sum, "hhat(x)": I_x, "hhat(delta)": I_d},
                         {"invariant": invariant, "subadditive": subadd})


def conjugate_module(rho, z):
    """z rho z^-1 for z in k^*: its phi_T has coefficients z a_i z^(-q^i)."""
    zinv = z.inverse() if hasattr(z, "inverse") else 1 / z
    coeffs = []
    zi = zinv
    for i, a in enumerate(rho.phi_T.coeffs):
        if i:
            zi = zi.frob(1)
        coeffs.append(z * a * zi)
    return DrinfeldModule(coeffs, rho.q)


def is_isogeny(rho, varrho, P):
    return ore_mul(P, rho.phi_T) == ore_mul(varrho.phi_T, P)


def check_isogeny_relation(rho, varrho, P, x, tol, budget=DEFAULT_BUDGET):
    """q^(deg P) hhat_rho(x) against hhat_varrho(P(x)) once P rho_T = varrho_T P."""
    if not isinstance(P, OrePoly):
        P = OrePoly([P])
    if not is_isogeny(rho, varrho, P):
        raise ValueError("P is not an isogeny from rho to varrho")
    Q = rho.q ** P.degree
    tol = Fraction(tol)
    I1 = canonical_height(rho, x, tol / Q, budget).scaled(Q)
    I2 = canonical_height(varrho, P(x), tol, budget)
    return IntervalCheck("isogeny_relation", I1.intersects(I2),
                         {"q^degP*hhat_rho(x)": I1, "hhat_varrho(P(x))": I2},
                         {"P": str(P)})


# --------------------------------------------------------------------------
# Northcott search


CSV_COLUMNS = ("q", "minpoly", "degree", "h_weil", "hhat_lo", "hhat_hi", "torsion", "iterations")


@dataclass(frozen=True)
class SearchRecord:
    q: int
    minpoly: str
    degree: int
    h_weil: Fraction
    hhat_lo: Fraction
    hhat_hi: Fraction
    torsion: bool
    iterations: int
    partial: bool = False

    def row(self):
        return [self.q, self.minpoly, self.degree, str(self.h_weil), str(self.hhat_lo),
                str(self.hhat_hi), "true" if self.torsion else "false", self.iterations]

    def sort_key(self):
        return ((self.hhat_lo + self.hhat_hi) / 2, self.degree, self.minpoly)


@dataclass
class SearchResult:
    records: list
    best: SearchRecord = None
    partial: bool = False

    def csv_rows(self):
        return [list(CSV_COLUMNS)] + [r.row() for r in self.records]


def _candidates(q, d, D):
    A = poly_ring(q)
    low = [f for n in range(D + 1) for f in _polys_of_degree(A, n)]
    low = [A.zero] + low
    leads = [f for n in range(D + 1) for f in A.monic_of_degree(n)]
    for n in range(1, d + 1):
        for lead in leads:
            for tail in product(low, repeat=n):
                f = tuple(tail) + (lead,)
                if not f[0] and n > 1:
                    continue
                if content(f).is_one():
                    yield f


def _polys_of_degree(A, n):
    for lead in range(1, A.q):
        for tail in product(range(A.q), repeat=n):
            yield PolyA(A.F, list(tail) + [lead])


def _search_one(args):
    phi, f, tol, budget = args
    try:
        certify_irreducible(f)
    except ValueError:
        return None
    amb = Ambient(f, check=False, certificate="search", name="X")
    x = amb.gen
    name = format_xpoly(f)
    h = weil_height(x)
    cert = is_torsion(phi, x)
    if cert.torsion:
        return SearchRecord(phi.q, name, amb.d, h, Fraction(0), Fraction(0), True, cert.index)
    try:
        I = canonical_height(phi, x, tol, budget)
        return SearchRecord(phi.q, name, amb.d, h, I.lo, I.hi, False, I.iterations)
    except BudgetExceeded as exc:
        I = exc.partial
        return SearchRecord(phi.q, name, amb.d, h, I.lo, I.hi, False, I.iterations, True)


def min_height_search(phi, d, D, tol=Fraction(1, 8), budget=DEFAULT_BUDGET, workers=1):
    """Enumerate irreducible primitive f in A[X] with deg_X f <= d and coefficient
    degrees <= D; return all records and the non-torsion one of least midpoint."""
    if d < 1 or D < 0:
        raise ValueError("need d >= 1 and D >= 0")
    if d > 3:
        raise ValueError("search is limited to deg_X f <= 3")
    jobs = [(phi, f, Fraction(tol), budget) for f in _candidates(phi.q, d, D)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_one, jobs, chunksize=8))
    else:
        results = [_search_one(j) for j in jobs]
    records = [r for r in results if r is not None]
    records.sort(key=lambda r: (r.degree, r.minpoly))
    live = [r for r in records if not r.torsion]
    best = min(live, key=SearchRecord.sort_key) if live else None
    return SearchResult(records, best, any(r.partial for r in records))
