"""The rational function field k = F_q(T)."""
from fractions import Fraction

from .fq import GF, FiniteField
from .polya import PolyA, gcd


class RatFunc:
    """num/den with den monic and gcd(num, den) = 1.  Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den, self._hash = num.num, num.den, None
            return
        F = num.F
        if den is None:
            den = PolyA.const(F, 1)
        elif isinstance(den, int):
            den = PolyA.const(F, F.from_int(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = gcd(num, den)
        if not g.is_one():
            num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            inv = F.inv[lc]
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den, self._hash = num, den, None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def from_poly(cls, a):
        return cls._raw(a, PolyA.const(a.F, 1))

    @property
    def F(self):
        return self.num.F

    def is_poly(self):
        return self.den.is_one()

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.den.is_one() and self.num.is_one()

    @property
    def degree(self):
        """deg num - deg den, i.e. -v_inf (None for 0)."""
        if not self.num:
            return None
        return self.num.degree - self.den.degree

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, PolyA):
            return RatFunc.from_poly(other)
        if isinstance(other, int):
            return RatFunc.from_poly(PolyA.const(self.F, self.F.from_int(other)))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if self.den.is_one():
            return RatFunc._raw(self.num * o.den + o.num, o.den)
        if o.den.is_one():
            return RatFunc._raw(o.num * self.den + self.num, self.den)
        g = gcd(self.den, o.den)
        b1, d1 = self.den // g, o.den // g
        num = self.num * d1 + o.num * b1
        return RatFunc(num, self.den * d1)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc.from_poly(PolyA.const(self.F, 0))
        g1 = gcd(self.num, o.den)
        g2 = gcd(o.num, self.den)
        a, d = self.num, o.den
        if not g1.is_one():
            a, d = a // g1, d // g1
        c, b = o.num, self.den
        if not g2.is_one():
            c, b = c // g2, b // g2
        return RatFunc._raw(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def frob(self, k=1):
        """self^(q^k)."""
        return RatFunc._raw(self.num.frob(k), self.den.frob(k))

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den)) if not self.den.is_one() else hash(self.num)
        return self._hash

    def height(self):
        """Weil height of an element of k: max(deg num, deg den)."""
        if not self.num:
            return Fraction(0)
        return Fraction(max(self.num.degree, self.den.degree))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1 and "+" in n:
            n = f"({n})"
        d = str(self.den)
        if "+" in d or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __reduce__(self):
        return (RatFunc._raw, (self.num, self.den))


class FunctionField:
    """The field k = F_q(T) as a parent object."""

    def __init__(self, F):
        self.F = F if isinstance(F, FiniteField) else GF(F)
        self.q = self.F.q
        self.zero = RatFunc.from_poly(PolyA.const(self.F, 0))
        self.one = RatFunc.from_poly(PolyA.const(self.F, 1))
        self.T = RatFunc.from_poly(PolyA.T(self.F))

    def __call__(self, x, den=None):
        if den is not None:
            return RatFunc(self._poly(x), self._poly(den))
        if isinstance(x, RatFunc):
            return x
        return RatFunc.from_poly(self._poly(x))

    def _poly(self, x):
        if isinstance(x, PolyA):
            return x
        if isinstance(x, int):
            return PolyA.const(self.F, self.F.from_int(x))
        if isinstance(x, (list, tuple)):
            return PolyA(self.F, x)
        raise TypeError(f"cannot coerce {x!r} into F_{self.q}(T)")

    def random(self, rng, max_degree, nonzero=False):
        from .polya import poly_ring

        R = poly_ring(self.q)
        num = R.random(rng, max_degree, nonzero=nonzero)
        den = R.random(rng, max_degree, nonzero=True)
        return RatFunc(num, den)

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.F is self.F

    def __hash__(self):
        return hash(("k", self.q))

    def __repr__(self):
        return f"F_{self.q}(T)"


def as_ratfunc(F, x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, PolyA):
        return RatFunc.from_poly(x)
    if isinstance(x, int):
        return RatFunc.from_poly(PolyA.const(F, F.from_int(x)))
    raise TypeError(f"not an element of k: {x!r}")
