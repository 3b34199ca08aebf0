"""Explicit finite extensions K = k[X]/(f) and their elements.

An ambient is given by a polynomial f over k, irreducible of degree d.  After
clearing denominators f is primitive in A[X] with monic leading coefficient c,
and theta' = c*theta is a root of the monic integral polynomial

    F(Y) = c^(d-1) f(Y/c)  in A[Y].

Elements are stored as (n_0 + n_1 theta' + ... + n_{d-1} theta'^(d-1)) / den
with n_j in A and den monic, reduced so that gcd(den, n_0, ..., n_{d-1}) = 1.
Working over A[theta'] keeps multiplication division-free, and the q-power
Frobenius is cheap: n(T)^q = n(T^q) coefficientwise, and the powers
theta'^(jq) are precomputed.
"""

from .fq import GF
from .polya import PolyA, factorize, gcd, lcm, monic_divisors, poly_ring
from .ratfunc import RatFunc, as_ratfunc
from .xpoly import XPoly, format_xpoly

# --------------------------------------------------------------------------
# polynomials over A given as tuples of PolyA


def content(polys):
    """Monic gcd of a family of polynomials (zero if all vanish)."""
    g = None
    for a in polys:
        if not a:
            continue
        g = a.monic() if g is None else gcd(g, a)
        if g.is_one():
            return g
    return g


def primitive_part(coeffs, F=None):
    """Clear denominators and content of a polynomial over k.

    Returns a tuple of PolyA, primitive, with leading coefficient monic in T.
    """
    cs = list(coeffs)
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    if F is None:
        F = next(c.F for c in cs if not isinstance(c, int))
    ks = [as_ratfunc(F, c) for c in cs]
    L = PolyA.const(F, 1)
    for r in ks:
        if not r.den.is_one():
            L = lcm(L, r.den)
    polys = [r.num * (L // r.den) for r in ks]
    g = content(polys)
    polys = [a // g for a in polys]
    inv = F.inv[polys[-1].lc]
    return tuple(a.scale(inv) for a in polys)


def _eval_homog(f, u, w):
    """sum f_i u^i w^(d-i); zero iff u/w is a root of f."""
    d = len(f) - 1
    acc = PolyA.const(u.F, 0)
    upow = PolyA.const(u.F, 1)
    wpows = [PolyA.const(u.F, 1)]
    for _ in range(d):
        wpows.append(wpows[-1] * w)
    for i, a in enumerate(f):
        if a:
            acc = acc + a * upow * wpows[d - i]
        upow = upow * u
    return acc


def rational_roots(f):
    """Roots in k of a primitive polynomial f over A (tuple of PolyA)."""
    F = f[-1].F
    if not f[0]:
        roots = [RatFunc.from_poly(PolyA.const(F, 0))]
        k = 1
        while not f[k]:
            k += 1
        return roots + rational_roots(f[k:])
    if len(f) == 1:
        return []
    roots = []
    for u in monic_divisors(f[0]):
        for w in monic_divisors(f[-1]):
            if not gcd(u, w).is_one():
                continue
            for e in F.units():
                ue = u.scale(e)
                if not _eval_homog(f, ue, w):
                    roots.append(RatFunc(ue, w))
    return roots


def eisenstein_prime(f):
    """A prime P with f Eisenstein at P, or None."""
    d = len(f) - 1
    low = content(f[:d])
    if low is None or low.degree < 1:
        return None
    for P, _ in factorize(low):
        if f[d] % P and f[0] % (P * P):
            return P
    return None


def certify_irreducible(f, max_root_test_degree=3):
    """Certificate string for the irreducibility of a primitive f over k, or raise."""
    d = len(f) - 1
    if d < 1:
        raise ValueError("defining polynomial must have degree >= 1")
    if d == 1:
        return "degree 1"
    P = eisenstein_prime(f)
    if P is not None:
        return f"Eisenstein at {P}"
    if d <= max_root_test_degree:
        roots = rational_roots(f)
        if roots:
            raise ValueError(f"{format_xpoly(f)} is reducible: root {roots[0]}")
        return "no root in k"
    raise ValueError(
        f"cannot certify irreducibility of {format_xpoly(f)} "
        f"(degree {d} > {max_root_test_degree} and not Eisenstein)")


# --------------------------------------------------------------------------
# characteristic polynomials over A (division-free)


def berkowitz(M, one, zero):
    """Characteristic polynomial det(Y I - M), coefficients lowest degree first."""
    n = len(M)
    poly = [one]  # highest degree first during the recursion
    for r in range(n):
        a = M[r][r]
        R = M[r][:r]
        C = [M[i][r] for i in range(r)]
        col = [one, -a]
        v = C
        for _ in range(r):
            s = zero
            for x, y in zip(R, v):
                if x and y:
                    s = s + x * y
            col.append(-s)
            v = [sum((M[i][j] * v[j] for j in range(r) if M[i][j] and v[j]), zero)
                 for i in range(r)]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(max(0, i - len(col) + 1), min(i, len(poly) - 1) + 1):
                x, y = col[i - j], poly[j]
                if x and y:
                    s = s + x * y
            new.append(s)
        poly = new
    return list(reversed(poly))


# --------------------------------------------------------------------------


class Ambient:
    """The field k(theta) with theta a root of an irreducible f over k."""

    def __init__(self, f, check=True, certificate=None, name="X"):
        coeffs = f.coeffs if isinstance(f, XPoly) else tuple(f)
        F = next(c.F for c in coeffs if not isinstance(c, int))
        self.Fq = F
        self.q = F.q
        self.f = primitive_part(coeffs, F)
        self.d = len(self.f) - 1
        if self.d < 1:
            raise ValueError("defining polynomial must have degree >= 1")
        self.name = name
        if certificate is not None:
            self.certificate = certificate
        elif check:
            self.certificate = certify_irreducible(self.f)
        else:
            self.certificate = "unchecked"
        d = self.d
        self.c = self.f[d]
        cpows = [PolyA.const(F, 1)]
        for _ in range(d):
            cpows.append(cpows[-1] * self.c)
        self.Fmon = tuple(self.f[i] * cpows[d - 1 - i] for i in range(d)) + (PolyA.const(F, 1),)
        self._neg_low = tuple(-a for a in self.Fmon[:d])
        self._zero = PolyA.const(F, 0)
        self._one = PolyA.const(F, 1)
        self._frob = {}
        self._key = (self.q, self.f)

    # -- identity
    def __eq__(self, other):
        return isinstance(other, Ambient) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __reduce__(self):
        return (_rebuild_ambient, (self.q, tuple(a.c for a in self.f), self.certificate, self.name))

    def __repr__(self):
        return f"Ambient({format_xpoly(self.f, self.name)})"

    @property
    def degree(self):
        return self.d

    @property
    def defining_polynomial(self):
        return XPoly(self.f)

    # -- vector kernels over A[theta']
    def _reduce(self, v):
        d = self.d
        v = list(v)
        for k in range(len(v) - 1, d - 1, -1):
            t = v[k]
            if t:
                for i, a in enumerate(self._neg_low):
                    if a:
                        v[k - d + i] = v[k - d + i] + t * a
            v.pop()
        while len(v) < d:
            v.append(self._zero)
        return v

    def _vmul(self, a, b):
        d = self.d
        out = [self._zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return self._reduce(out)

    def _frob_table(self, k):
        """[(theta'^j)^(q^k) for j < d] as vectors."""
        tab = self._frob.get(k)
        if tab is None:
            d = self.d
            if k == 0:
                tab = [[self._one if i == j else self._zero for i in range(d)] for j in range(d)]
            else:
                prev = self._frob_table(k - 1)
                # (theta'^j)^(q^k) = Frob applied to (theta'^j)^(q^(k-1))
                base = self._frob_table(1) if k > 1 else None
                if k == 1:
                    t = [self._zero] * d
                    if d > 1:
                        t[1] = self._one
                    else:
                        t[0] = -self.Fmon[0]
                    tq = self._vpow(t, self.q)
                    tab = [None] * d
                    cur = [self._one] + [self._zero] * (d - 1)
                    for j in range(d):
                        tab[j] = cur
                        cur = self._vmul(cur, tq)
                else:
                    tab = [self._vfrob1(vec, base) for vec in prev]
            self._frob[k] = tab
        return tab

    def _vpow(self, v, n):
        result = [self._one] + [self._zero] * (self.d - 1)
        while n:
            if n & 1:
                result = self._vmul(result, v)
            n >>= 1
            if n:
                v = self._vmul(v, v)
        return result

    def _vfrob1(self, v, table):
        out = [self._zero] * self.d
        for j, a in enumerate(v):
            if a:
                aq = a.frob(1)
                for i, b in enumerate(table[j]):
                    if b:
                        out[i] = out[i] + aq * b
        return out

    def _vfrob(self, v, k):
        table = self._frob_table(k)
        out = [self._zero] * self.d
        for j, a in enumerate(v):
            if a:
                aq = a.frob(k)
                for i, b in enumerate(table[j]):
                    if b:
                        out[i] = out[i] + aq * b
        return out

    # -- element constructors
    def element(self, nums, den=None):
        nums = list(nums) + [self._zero] * (self.d - len(nums))
        return AlgebraicElement(self, nums, den if den is not None else self._one)

    def __call__(self, x):
        if isinstance(x, AlgebraicElement):
            if x.amb != self:
                raise ValueError("element of a different ambient")
            return x
        if isinstance(x, int):
            x = PolyA.const(self.Fq, self.Fq.from_int(x))
        if isinstance(x, PolyA):
            return AlgebraicElement._raw(self, [x] + [self._zero] * (self.d - 1), self._one)
        if isinstance(x, RatFunc):
            return AlgebraicElement._raw(self, [x.num] + [self._zero] * (self.d - 1), x.den)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        """theta, the class of X."""
        if self.d == 1:
            return self(RatFunc(-self.f[0], self.f[1]))
        v = [self._zero] * self.d
        v[1] = self._one
        return AlgebraicElement(self, v, self.c)

    def from_coeffs(self, coeffs):
        """sum coeffs[j] theta^j with coeffs in k."""
        th = self.gen
        acc = self.zero
        pw = self.one
        for a in coeffs:
            if a:
                acc = acc + pw * a
            pw = pw * th
        return acc

    def random_element(self, rng, max_degree, nonzero=False):
        R = poly_ring(self.q)
        while True:
            nums = [R.random(rng, max_degree) for _ in range(self.d)]
            den = R.random(rng, max_degree, nonzero=True, monic=True)
            x = AlgebraicElement(self, nums, den)
            if x or not nonzero:
                return x


def _rebuild_ambient(q, fc, certificate, name):
    F = GF(q)
    return Ambient([PolyA(F, c) for c in fc], check=False, certificate=certificate, name=name)


def rational_ambient(q):
    """k itself, as the degree-1 ambient k[X]/(X)."""
    F = GF(q)
    return _rational_cache(F)


_RATIONAL = {}


def _rational_cache(F):
    amb = _RATIONAL.get(F.q)
    if amb is None:
        amb = _RATIONAL[F.q] = Ambient([PolyA.const(F, 0), PolyA.const(F, 1)])
    return amb


# --------------------------------------------------------------------------


class AlgebraicElement:
    """An element of an :class:`Ambient`; see the module docstring for the layout."""

    __slots__ = ("amb", "nums", "den", "_cp", "_hash")

    def __init__(self, amb, nums, den):
        nums = list(nums)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not any(nums):
            den = amb._one
        elif not den.is_one():
            g = den.monic()
            for a in nums:
                if a:
                    g = gcd(g, a)
                    if g.is_one():
                        break
            if not g.is_one():
                nums = [a // g for a in nums]
                den = den // g
            if den.lc != 1:
                inv = amb.Fq.inv[den.lc]
                nums = [a.scale(inv) for a in nums]
                den = den.scale(inv)
        self.amb = amb
        self.nums = tuple(nums)
        self.den = den
        self._cp = None
        self._hash = None

    @classmethod
    def _raw(cls, amb, nums, den):
        obj = cls.__new__(cls)
        obj.amb, obj.nums, obj.den = amb, tuple(nums), den
        obj._cp = None
        obj._hash = None
        return obj

    @property
    def F(self):
        return self.amb.Fq

    def __bool__(self):
        return any(self.nums)

    def _coerce(self, other):
        if isinstance(other, AlgebraicElement):
            if other.amb is not self.amb and other.amb != self.amb:
                raise ValueError("elements of different ambients")
            return other
        if isinstance(other, (int, PolyA, RatFunc)):
            return self.amb(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return AlgebraicElement(self.amb, [a + b for a, b in zip(self.nums, o.nums)], self.den)
        g = gcd(self.den, o.den)
        s, t = o.den // g, self.den // g
        nums = [a * s + b * t for a, b in zip(self.nums, o.nums)]
        return AlgebraicElement(self.amb, nums, self.den * s)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicElement._raw(self.amb, [-a for a in self.nums], self.den)

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

    def _scalar_mul(self, r):
        # r in k
        if isinstance(r, PolyA):
            return AlgebraicElement(self.amb, [a * r for a in self.nums], self.den)
        return AlgebraicElement(self.amb, [a * r.num for a in self.nums], self.den * r.den)

    def __mul__(self, other):
        if isinstance(other, int):
            other = PolyA.const(self.F, self.F.from_int(other))
        if isinstance(other, (PolyA, RatFunc)):
            return self._scalar_mul(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            return self._scalar_mul(o.to_ratfunc())
        if self.is_rational():
            return o._scalar_mul(self.to_ratfunc())
        return AlgebraicElement(self.amb, self.amb._vmul(self.nums, o.nums), self.den * o.den)

    __rmul__ = __mul__

    def is_rational(self):
        return not any(self.nums[1:])

    def to_ratfunc(self):
        if not self.is_rational():
            raise ValueError("element is not in k")
        return RatFunc(self.nums[0], self.den)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.amb(self.to_ratfunc().inverse())
        # N * S = -c_0 with S = sum_{i>=1} c_i N^(i-1), so x^-1 = -den S / c_0
        cp = self.integral_charpoly()
        amb = self.amb
        S = [amb._zero] * amb.d
        for ci in reversed(cp[1:]):
            S = amb._vmul(S, self.nums)
            S[0] = S[0] + ci
        c0 = cp[0]
        return AlgebraicElement(amb, [-(a * self.den) for a in S], c0.monic()) * \
            PolyA.const(self.F, self.F.inv[c0.lc])

    def __truediv__(self, other):
        if isinstance(other, int):
            other = PolyA.const(self.F, self.F.from_int(other))
        if isinstance(other, (PolyA, RatFunc)):
            return self._scalar_mul(as_ratfunc(self.F, other).inverse())
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
        result = self.amb.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob(self, k=1):
        """self^(q^k)."""
        if k == 0 or not self:
            return self
        amb = self.amb
        if self.is_rational():
            return AlgebraicElement._raw(amb, [self.nums[0].frob(k)] + list(self.nums[1:]),
                                         self.den.frob(k))
        nums = amb._vfrob(self.nums, k)
        return AlgebraicElement(amb, nums, self.den.frob(k))

    def __eq__(self, other):
        if isinstance(other, AlgebraicElement):
            return self.amb == other.amb and self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, PolyA, RatFunc)):
            return self == self.amb(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nums, self.den))
        return self._hash

    # -- size and invariants
    def words(self):
        """Number of F_q coefficients in the representation."""
        return sum(len(a) for a in self.nums) + len(self.den)

    def coeffs(self):
        """Coefficients in k with respect to 1, theta, ..., theta^(d-1)."""
        out = []
        cpow = self.amb._one
        for a in self.nums:
            out.append(RatFunc(a * cpow, self.den))
            cpow = cpow * self.amb.c
        return out

    def mult_matrix(self):
        """Matrix over A of multiplication by the numerator N in the basis theta'^j."""
        amb = self.amb
        d = amb.d
        cols = []
        cur = list(self.nums)
        for j in range(d):
            cols.append(cur)
            if j + 1 < d:
                cur = amb._reduce([amb._zero] + cur)
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def integral_charpoly(self):
        """Characteristic polynomial of the numerator N over A (monic, lowest first)."""
        if self._cp is None:
            amb = self.amb
            if amb.d == 1:
                self._cp = (-self.nums[0], amb._one)
            else:
                self._cp = tuple(berkowitz(self.mult_matrix(), amb._one, amb._zero))
        return self._cp

    def charpoly(self):
        """Characteristic polynomial of x over k, in A[X] up to scaling: sum c_i den^i X^i."""
        cp = self.integral_charpoly()
        out = []
        dp = self.amb._one
        for c in cp:
            out.append(c * dp)
            dp = dp * self.den
        return tuple(out)

    def trace(self):
        cp = self.integral_charpoly()
        return RatFunc(-cp[-2], self.den)

    def norm(self):
        cp = self.integral_charpoly()
        n = cp[0] if self.amb.d % 2 == 0 else -cp[0]
        return RatFunc(n, self.den ** self.amb.d)

    def __repr__(self):
        return f"AlgebraicElement({self})"

    def __str__(self):
        if self.is_rational():
            return str(self.to_ratfunc())
        return format_xpoly(self.coeffs(), self.amb.name)

    def __reduce__(self):
        return (AlgebraicElement._raw, (self.amb, self.nums, self.den))


# --------------------------------------------------------------------------
# minimal polynomials


def _krylov_relation(vectors_fn, dim, F):
    """First linear relation sum lam_i w_i = 0 among w_0, w_1, ... (vectors over k)."""
    zero = RatFunc.from_poly(PolyA.const(F, 0))
    one = RatFunc.from_poly(PolyA.const(F, 1))
    basis = []  # (pivot, vector, combination)
    i = 0
    while True:
        v = list(vectors_fn(i))
        combo = [zero] * i + [one]
        for piv, bv, bc in basis:
            if v[piv]:
                f = v[piv] / bv[piv]
                v = [a - f * b for a, b in zip(v, bv)]
                combo = [a - f * b for a, b in zip(combo, bc + [zero] * (len(combo) - len(bc)))]
        pivot = next((j for j, a in enumerate(v) if a), None)
        if pivot is None:
            return combo
        basis.append((pivot, v, combo))
        i += 1
        if i > dim:
            raise AssertionError("Krylov sequence failed to become dependent")


def min_poly(x):
    """Minimal polynomial of x over k, primitive in A[X], leading coefficient monic in T."""
    amb = x.amb
    if x.is_rational():
        r = x.to_ratfunc()
        return XPoly(primitive_part([-r, 1], amb.Fq))
    powers = [amb.one]

    def vec(i):
        while len(powers) <= i:
            powers.append(powers[-1] * x)
        return powers[i].coeffs()

    combo = _krylov_relation(vec, amb.d, amb.Fq)
    return XPoly(primitive_part(combo, amb.Fq))


def conjugate_valuations(x, v, full=False):
    """Valuations at v of the conjugates of x over the completion k_v, ascending.

    With ``full=False`` the multiset has size deg min_poly(x); with ``full=True``
    it has size [K:k], each conjugate repeated [K:k(x)] times, which is the
    normalization used when comparing two elements of the same ambient.
    """
    from .places import newton_polygon

    if full:
        poly = x.charpoly()
    else:
        poly = min_poly(x).coeffs
    return newton_polygon(poly, v).root_valuations()


def degree_of(x):
    return min_poly(x).degree
