"""Univariate polynomials in X over A, k or an ambient extension.

Coefficients are any ring elements supporting +, -, * and truthiness; the
class does no coercion of its own beyond dropping trailing zeros.
"""


def _is_zero(a):
    return not a


class XPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else None

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else None

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def _lift(self, other):
        if isinstance(other, XPoly):
            return other
        return XPoly([other])

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = [x + y for x, y in zip(a, b)] + list(a[len(b):])
        return XPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return XPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return XPoly([])
        out = [None] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if _is_zero(x):
                continue
            for j, y in enumerate(o.coeffs):
                if _is_zero(y):
                    continue
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = self.coeffs[0] * 0
        return XPoly([zero if c is None else c for c in out])

    __rmul__ = __mul__

    def __pow__(self, n):
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result if result is not None else XPoly([self.coeffs[0] ** 0])

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c + x * 0 if acc is None else acc * x + c
        if acc is None:
            return x * 0
        return acc

    def map(self, fn):
        return XPoly([fn(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            other = XPoly([other])
        return len(self.coeffs) == len(other.coeffs) and all(
            x == y for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"XPoly({self})"

    def __str__(self):
        return format_xpoly(self.coeffs, "X")


def _wrap(s):
    if "+" in s or "/" in s:
        return f"({s})"
    return s


def format_xpoly(coeffs, var="X"):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if _is_zero(c):
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        s = str(c)
        if not mono:
            terms.append(s)
        elif s == "1":
            terms.append(mono)
        else:
            terms.append(f"{_wrap(s)}*{mono}")
    return " + ".join(terms) if terms else "0"
