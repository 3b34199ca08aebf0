"""Recursive-descent parser for the text formats used on the command line.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/")? unary)*        juxtaposition multiplies
    unary  := ("+" | "-") unary | power
    power  := atom ("^" exponent)?
    atom   := NUMBER | NAME | "(" expr ")"

Names: ``T``; ``X`` (only in minimal polynomials); ``l`` (bound to a chosen
ambient generator); ``g`` (generator of F_q); ``t<i>`` for tau^i.  Integers are
reduced mod p.
"""
import re

from .algebraic import AlgebraicElement, Ambient
from .fq import GF
from .polya import PolyA, poly_ring
from .ratfunc import RatFunc
from .xpoly import XPoly


class ParseError(ValueError):
    def __init__(self, message, text="", pos=None):
        where = f" at position {pos} in {text!r}" if pos is not None else ""
        super().__init__(message + where)
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r}", text, start)
            out.append(("sym", sym, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, ctx):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, sym):
        t = self.take()
        if t[0] != "sym" or t[1] != sym:
            raise ParseError(f"expected {sym!r}", self.text, t[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.text, 0)
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", self.text, t[2])
        return v

    def expr(self):
        v = self.term()
        while True:
            t = self.peek()
            if t[0] == "sym" and t[1] in "+-":
                self.take()
                w = self.term()
                v = self.ctx.add(v, w) if t[1] == "+" else self.ctx.sub(v, w)
            else:
                return v

    def _starts_atom(self, t):
        return t[0] in ("num", "name") or (t[0] == "sym" and t[1] == "(")

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if t[0] == "sym" and t[1] in "*/":
                self.take()
                w = self.unary()
                v = self.ctx.mul(v, w) if t[1] == "*" else self.ctx.div(v, w, self.text, t[2])
            elif self._starts_atom(t):
                v = self.ctx.mul(v, self.unary())
            else:
                return v

    def unary(self):
        t = self.peek()
        if t[0] == "sym" and t[1] in "+-":
            self.take()
            v = self.unary()
            return self.ctx.neg(v) if t[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "sym" and t[1] == "^":
            self.take()
            n = self.exponent()
            return self.ctx.pow(base, n, self.text, t[2])
        return base

    def exponent(self):
        t = self.take()
        sign = 1
        if t[0] == "sym" and t[1] == "-":
            sign, t = -1, self.take()
        if t[0] == "num":
            return sign * t[1]
        if t[0] == "sym" and t[1] == "(":
            n = self.exponent()
            self.expect(")")
            return sign * n
        raise ParseError("exponent must be an integer", self.text, t[2])

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return self.ctx.integer(t[1])
        if t[0] == "name":
            return self.ctx.name(t[1], self.text, t[2])
        if t[0] == "sym" and t[1] == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError("unexpected end of input" if t[0] == "end" else f"unexpected {t[1]!r}",
                         self.text, t[2])


class _Context:
    """Arithmetic with coercion: int < PolyA < RatFunc < AlgebraicElement < XPoly/OrePoly."""

    def __init__(self, q, ambient=None, allow_x=False, allow_tau=False):
        self.F = GF(q)
        self.A = poly_ring(q)
        self.ambient = ambient
        self.allow_x = allow_x
        self.allow_tau = allow_tau

    def integer(self, n):
        return PolyA.const(self.F, self.F.from_int(n))

    def name(self, s, text, pos):
        if s == "T":
            return self.A.T
        if s == "g":
            return PolyA.const(self.F, self.F.gen)
        if s == "l":
            if self.ambient is None:
                raise ParseError("'l' needs a cyclotomic ambient (pass --P)", text, pos)
            return self.ambient.gen
        if s == "X":
            if not self.allow_x:
                raise ParseError("'X' is only allowed in minimal polynomials", text, pos)
            return XPoly([self.A.zero, self.A.one])
        m = re.fullmatch(r"t(\d*)", s)
        if m:
            if not self.allow_tau:
                raise ParseError("tau terms are only allowed in module specs", text, pos)
            from ..ore import OrePoly

            return OrePoly.tau(RatFunc.from_poly(self.A.one), int(m.group(1) or 1))
        raise ParseError(f"unknown name {s!r}", text, pos)

    @staticmethod
    def _rank(x):
        if isinstance(x, PolyA):
            return 1
        if isinstance(x, RatFunc):
            return 2
        if isinstance(x, AlgebraicElement):
            return 3
        return 4

    def _up(self, x, r):
        if self._rank(x) >= r:
            return x
        if r == 2:
            return RatFunc.from_poly(x)
        if r == 3:
            return self.ambient(x)
        return x

    def _pair(self, a, b):
        r = max(self._rank(a), self._rank(b))
        if r == 4:
            return a, b
        return self._up(a, r), self._up(b, r)

    def add(self, a, b):
        if self._rank(b) == 4 and self._rank(a) < 4:
            return b.__radd__(a)
        a, b = self._pair(a, b)
        return a + b

    def sub(self, a, b):
        if self._rank(b) == 4 and self._rank(a) < 4:
            return b.__rsub__(a)
        a, b = self._pair(a, b)
        return a - b

    def mul(self, a, b):
        if self._rank(b) == 4 and self._rank(a) < 4:
            return b.__rmul__(a)
        a, b = self._pair(a, b)
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b, text, pos):
        if self._rank(b) == 4:
            raise ParseError("cannot divide by a polynomial in X or tau", text, pos)
        if not b:
            raise ParseError("division by zero", text, pos)
        if self._rank(a) == 4:
            return a * self.div(self.A.one, b, text, pos)
        a, b = self._pair(a, b)
        return a / b

    def pow(self, a, n, text, pos):
        if n < 0:
            if self._rank(a) == 4:
                raise ParseError("negative power of a polynomial in X or tau", text, pos)
            return self.div(self.A.one, self.pow(a, -n, text, pos), text, pos)
        if n == 0:
            return self.A.one if self._rank(a) < 4 else a ** 0
        return a ** n


def parse_element(text, q, ambient=None):
    """A scalar: PolyA, RatFunc, or an element of ``ambient`` when 'l' is used."""
    ctx = _Context(q, ambient)
    v = _Parser(text, ctx).parse()
    return v


def parse_poly(text, q):
    v = parse_element(text, q)
    if isinstance(v, RatFunc):
        if not v.is_poly():
            raise ParseError(f"{text!r} is not a polynomial in T")
        v = v.num
    return v


def parse_xpoly(text, q):
    """A polynomial in X with coefficients in k; returns the coefficient list (lowest first)."""
    ctx = _Context(q, allow_x=True)
    v = _Parser(text, ctx).parse()
    if not isinstance(v, XPoly):
        v = XPoly([v])
    coeffs = [RatFunc.from_poly(c) if isinstance(c, PolyA) else c for c in v.coeffs]
    if len(coeffs) < 2:
        raise ParseError(f"{text!r} has no positive degree in X")
    return coeffs


def parse_ore(text, q):
    """A twisted polynomial 'T*t0 + t2'; returns the OrePoly."""
    from ..ore import OrePoly

    ctx = _Context(q, allow_tau=True)
    v = _Parser(text, ctx).parse()
    if not isinstance(v, OrePoly):
        raise ParseError(f"{text!r} has no tau terms")
    return v


def ambient_from_minpoly(text, q, name="X"):
    """Ambient generated by a root of the given irreducible polynomial in X."""
    return Ambient(parse_xpoly(text, q), name=name)
