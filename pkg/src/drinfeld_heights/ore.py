"""Twisted polynomials L{tau} with tau*a = a^q*tau.

Coefficients may be PolyA, RatFunc or AlgebraicElement: anything with the
field operations and a ``frob(k)`` method computing a^(q^k).
"""
from .field_arith.polya import PolyA
from .field_arith.ratfunc import RatFunc
from .field_arith.xpoly import XPoly


def _frob(a, k):
    if k == 0 or isinstance(a, int):
        return a
    return a.frob(k)


class OrePoly:
    """sum coeffs[i] tau^i, immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def tau(cls, one, i=1):
        zero = one * 0
        return cls([zero] * i + [one])

    @property
    def degree(self):
        """deg_tau (-1 for zero)."""
        return len(self.coeffs) - 1

    def D(self):
        """Constant term (coefficient of tau^0)."""
        if not self.coeffs:
            return 0
        return self.coeffs[0]

    def mu(self):
        """Leading coefficient."""
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _lift(self, other):
        if isinstance(other, OrePoly):
            return other
        return OrePoly([other])

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return OrePoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return OrePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return ore_mul(self, self._lift(other))

    def __rmul__(self, other):
        # scalar on the left: no twist
        return OrePoly([other * c for c in self.coeffs])

    def __pow__(self, n):
        if n == 0:
            return OrePoly([self.coeffs[0] ** 0])
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __call__(self, x):
        return ore_eval(self, x)

    def map(self, fn):
        return OrePoly([fn(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            x == y for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"OrePoly({self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            s = str(c)
            if s == "1":
                terms.append(f"t{i}")
            else:
                if "+" in s or "/" in s:
                    s = f"({s})"
                terms.append(f"{s}*t{i}")
        return " + ".join(terms) if terms else "0"


def ore_mul(P, Q):
    """(a tau^i)(b tau^j) = a b^(q^i) tau^(i+j)."""
    if not P.coeffs or not Q.coeffs:
        return OrePoly([])
    out = [None] * (len(P.coeffs) + len(Q.coeffs) - 1)
    for i, a in enumerate(P.coeffs):
        if not a:
            continue
        for j, b in enumerate(Q.coeffs):
            if not b:
                continue
            t = a * _frob(b, i)
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = P.coeffs[0] * 0
    return OrePoly([zero if c is None else c for c in out])


def ore_eval(P, x):
    """sum a_i x^(q^i)."""
    acc = x * 0 if not isinstance(x, int) else None
    xi = x
    for i, a in enumerate(P.coeffs):
        if i:
            xi = _frob(xi, 1)
        if a:
            t = a * xi
            acc = t if acc is None else acc + t
    if acc is None:
        return P.coeffs[0] * 0 if P.coeffs else 0
    return acc


def right_divmod(P, Q):
    """(S, R) with P = S*Q + R and deg_tau R < deg_tau Q."""
    if not Q.coeffs:
        raise ZeroDivisionError("right division by the zero Ore polynomial")
    m = Q.degree
    b = Q.coeffs[-1]
    R = P
    zero = Q.coeffs[0] * 0
    S = [zero] * max(0, P.degree - m + 1)
    while R.degree >= m:
        n = R.degree
        s = R.coeffs[-1] / _frob(b, n - m)
        S[n - m] = s
        shifted = OrePoly([zero] * (n - m) + [s])
        R = R - ore_mul(shifted, Q)
        # the leading term cancels exactly; drop it in case of representational noise
        if R.degree == n:
            raise AssertionError("leading term failed to cancel")
    return OrePoly(S), R


def associated_additive_polynomial(P):
    """sum a_i X^(q^i) as an XPoly."""
    if not P.coeffs:
        return XPoly([])
    q = _field_q(P.coeffs[-1])
    zero = P.coeffs[0] * 0
    out = [zero] * (q ** P.degree + 1)
    for i, a in enumerate(P.coeffs):
        out[q ** i] = a
    return XPoly(out)


def _field_q(a):
    return a.F.q


def as_field_coeff(x, F):
    """Lift ints and PolyA to RatFunc so that division stays in k."""
    if isinstance(x, int):
        return RatFunc.from_poly(PolyA.const(F, F.from_int(x)))
    if isinstance(x, PolyA):
        return RatFunc.from_poly(x)
    return x
