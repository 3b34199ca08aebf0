"""The polynomial ring A = F_q[T].

Coefficient lists are stored lowest degree first with no trailing zeros, so
the zero polynomial is the empty tuple.  The low-level kernels work on plain
lists of ints; :class:`PolyA` wraps them with operators.
"""
import json
import os
import random
from array import array
from functools import lru_cache
from itertools import product
from threading import Lock

from .fq import GF, FiniteField

CACHE_ENV = "DRINFELD_HEIGHTS_CACHE"

# --------------------------------------------------------------------------
# list kernels


def _strip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    if F.p == 2:
        out = [x ^ y for x, y in zip(a, b)]
    elif F.is_prime:
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)]
    else:
        t = F.add
        out = [t[x][y] for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return _strip(out)


def _neg(F, a):
    if F.p == 2:
        return list(a)
    n = F.neg
    return [n[x] for x in a]


def _sub(F, a, b):
    if F.p == 2:
        return _add(F, a, b)
    return _add(F, a, _neg(F, b))


def _scale(F, a, s):
    if s == 0:
        return []
    if s == 1:
        return list(a)
    row = F.mul[s]
    return [row[x] for x in a]


_TYPECODES = ((1, "B"), (2, "H"), (4, "I"), (8, "Q"))


def _kron_mul(p, a, b):
    # Kronecker substitution: pack into big ints, multiply, unpack
    bound = min(len(a), len(b)) * (p - 1) ** 2
    for width, code in _TYPECODES:
        if bound < 1 << (8 * width):
            break
    else:
        return None
    x = int.from_bytes(array(code, a).tobytes(), "little")
    y = int.from_bytes(array(code, b).tobytes(), "little")
    n = len(a) + len(b) - 1
    raw = array(code)
    raw.frombytes((x * y).to_bytes(n * width, "little"))
    if p == 2:
        return _strip([v & 1 for v in raw])
    return _strip([v % p for v in raw])


def _mul(F, a, b):
    if not a or not b:
        return []
    if len(a) == 1:
        return _scale(F, b, a[0])
    if len(b) == 1:
        return _scale(F, a, b[0])
    if F.is_prime and min(len(a), len(b)) > 8:
        out = _kron_mul(F.p, a, b)
        if out is not None:
            return out
    out = [0] * (len(a) + len(b) - 1)
    if F.is_prime:
        p = F.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _strip([v % p for v in out])
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                out[i + j] = add[out[i + j]][row[y]]
    return _strip(out)


def _divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    r = list(a)
    inv = F.inv[b[-1]]
    quo = [0] * (len(a) - db)
    if F.is_prime:
        p = F.p
        bneg = [(-y) % p for y in b[:-1]]
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = (c * inv) % p
                quo[i - db] = c
                base = i - db
                for j, y in enumerate(bneg):
                    if y:
                        r[base + j] = (r[base + j] + c * y) % p
                r[i] = 0
    else:
        add, mul, neg = F.add, F.mul, F.neg
        bneg = [neg[y] for y in b[:-1]]
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = mul[c][inv]
                quo[i - db] = c
                base = i - db
                row = mul[c]
                for j, y in enumerate(bneg):
                    if y:
                        r[base + j] = add[r[base + j]][row[y]]
                r[i] = 0
    return _strip(quo), _strip(r[:db])


def _mod(F, a, b):
    return _divmod(F, a, b)[1]


def _monic(F, a):
    if not a or a[-1] == 1:
        return list(a)
    return _scale(F, a, F.inv[a[-1]])


def _gcd(F, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _mod(F, a, b)
    return _monic(F, a)


def _spread(a, k):
    # a(T) -> a(T^k); equals a^k when k is a power of q (coefficients are fixed by Frobenius)
    if k == 1 or len(a) <= 1:
        return list(a)
    out = [0] * ((len(a) - 1) * k + 1)
    out[::k] = a
    return out


# --------------------------------------------------------------------------


class PolyA:
    """An element of F_q[T], immutable.

    ``PolyA(F, [c0, c1, ...])`` builds c0 + c1 T + ...; coefficients are ints
    in the encoding of :class:`FiniteField`.
    """

    __slots__ = ("F", "c", "_hash")

    def __init__(self, F, coeffs=()):
        if isinstance(F, int):
            F = GF(F)
        self.F = F
        self.c = tuple(_strip([x % F.q for x in coeffs]))
        self._hash = None

    @classmethod
    def _raw(cls, F, coeffs):
        obj = cls.__new__(cls)
        obj.F = F
        obj.c = tuple(coeffs)
        obj._hash = None
        return obj

    @classmethod
    def T(cls, F, power=1):
        return cls._raw(F, [0] * power + [1])

    @classmethod
    def const(cls, F, a):
        return cls._raw(F, [a] if a else [])

    # -- basic accessors
    @property
    def degree(self):
        """deg_T, with deg 0 = -1."""
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else 0

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def monic(self):
        return PolyA._raw(self.F, _monic(self.F, self.c))

    def __bool__(self):
        return bool(self.c)

    def is_one(self):
        return self.c == (1,)

    def is_constant(self):
        return len(self.c) <= 1

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    # -- coercion
    def _coerce(self, other):
        if isinstance(other, PolyA):
            if other.F is not self.F:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return PolyA.const(self.F, self.F.from_int(other))
        return None

    # -- arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyA._raw(self.F, _add(self.F, self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return PolyA._raw(self.F, _neg(self.F, self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyA._raw(self.F, _sub(self.F, self.c, o.c))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyA._raw(self.F, _mul(self.F, self.c, o.c))

    __rmul__ = __mul__

    def scale(self, s):
        """Multiply by the F_q element s (an int code)."""
        return PolyA._raw(self.F, _scale(self.F, self.c, s))

    def shift(self, n):
        """Multiply by T^n."""
        if not self.c:
            return self
        return PolyA._raw(self.F, [0] * n + list(self.c))

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        qu, r = _divmod(self.F, self.c, o.c)
        return PolyA._raw(self.F, qu), PolyA._raw(self.F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        from .ratfunc import RatFunc

        return RatFunc(self, other)

    def __rtruediv__(self, other):
        from .ratfunc import RatFunc

        return RatFunc(self._coerce(other), self)

    def exact_div(self, other):
        qu, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return qu

    def divides(self, other):
        return not (other % self)

    def __pow__(self, n):
        if n < 0:
            return PolyA.const(self.F, 1) / self ** (-n)
        result = PolyA.const(self.F, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob(self, k=1):
        """self^(q^k), computed as T -> T^(q^k)."""
        return PolyA._raw(self.F, _spread(self.c, self.F.q ** k))

    def derivative(self):
        F = self.F
        out = []
        for i in range(1, len(self.c)):
            out.append(F.mul[self.c[i]][F.from_int(i)])
        return PolyA._raw(F, _strip(out))

    def __call__(self, x):
        """Horner evaluation at x (an F_q int code or any ring element)."""
        if isinstance(x, int):
            F = self.F
            acc = 0
            for a in reversed(self.c):
                acc = F.add[F.mul[acc][x]][a]
            return acc
        acc = x * 0
        for a in reversed(self.c):
            acc = acc * x + PolyA.const(self.F, a)
        return acc

    def pth_root(self):
        F, p = self.F, self.F.p
        if any(x for i, x in enumerate(self.c) if i % p):
            raise ValueError("not a p-th power")
        return PolyA._raw(F, [F.pth_root(x) for x in self.c[::p]])

    # -- comparisons
    def __eq__(self, other):
        if isinstance(other, PolyA):
            return self.F is other.F and self.c == other.c
        if isinstance(other, int):
            return self.c == tuple(_strip([self.F.from_int(other)]))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.F.q, self.c))
        return self._hash

    def sort_key(self):
        return (len(self.c), tuple(reversed(self.c)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"PolyA({self})"

    def __str__(self):
        return format_poly(self.F, self.c, "T")

    def __reduce__(self):
        return (PolyA, (self.F.q, self.c))


def format_poly(F, c, var):
    if not c:
        return "0"
    terms = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        coef = F.fmt(a)
        if not mono:
            terms.append(coef)
        elif coef == "1":
            terms.append(mono)
        else:
            terms.append(f"{coef}*{mono}")
    return " + ".join(terms)


# --------------------------------------------------------------------------


class PolyRing:
    """The ring A = F_q[T] as a parent object."""

    def __init__(self, F):
        self.F = F if isinstance(F, FiniteField) else GF(F)
        self.q = self.F.q
        self.zero = PolyA._raw(self.F, [])
        self.one = PolyA._raw(self.F, [1])
        self.T = PolyA.T(self.F)

    def __call__(self, x):
        if isinstance(x, PolyA):
            return x
        if isinstance(x, int):
            return PolyA.const(self.F, self.F.from_int(x))
        if isinstance(x, (list, tuple)):
            return PolyA(self.F, x)
        raise TypeError(f"cannot coerce {x!r} into F_{self.q}[T]")

    def coerce(self, x):
        return self(x)

    def monic_of_degree(self, n):
        for tail in product(range(self.q), repeat=n):
            yield PolyA._raw(self.F, list(tail) + [1])

    def of_degree_below(self, n):
        """All polynomials of degree < n (including 0)."""
        for cs in product(range(self.q), repeat=n):
            yield PolyA(self.F, cs)

    def random(self, rng, max_degree, nonzero=False, monic=False):
        while True:
            n = rng.randint(0, max_degree)
            cs = [rng.randrange(self.q) for _ in range(n + 1)]
            if monic:
                cs[-1] = 1
            f = PolyA(self.F, cs)
            if f or not nonzero:
                return f

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.F is self.F

    def __hash__(self):
        return hash(("A", self.q))

    def __repr__(self):
        return f"F_{self.q}[T]"


@lru_cache(maxsize=None)
def poly_ring(q):
    return PolyRing(GF(q))


# --------------------------------------------------------------------------
# gcd and friends


def gcd(a, b):
    """Monic gcd (zero if both inputs are zero)."""
    return PolyA._raw(a.F, _gcd(a.F, a.c, b.c))


def xgcd(a, b):
    """Return (g, u, v) with u*a + v*b = g and g monic (or zero)."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = PolyA.const(F, 1), PolyA.const(F, 0)
    t0, t1 = PolyA.const(F, 0), PolyA.const(F, 1)
    while r1:
        qu, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qu * s1
        t0, t1 = t1, t0 - qu * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv[r0.lc]
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def lcm(a, b):
    if not a or not b:
        return PolyA.const(a.F, 0)
    return (a * b // gcd(a, b)).monic()


def powmod(base, n, mod):
    F = base.F
    result = [1]
    b = _mod(F, base.c, mod.c)
    while n:
        if n & 1:
            result = _mod(F, _mul(F, result, b), mod.c)
        n >>= 1
        if n:
            b = _mod(F, _mul(F, b, b), mod.c)
    return PolyA._raw(F, _mod(F, result, mod.c))


def _frob_mod(h, f, k=1):
    # h^(q^k) mod f
    return powmod(h, h.F.q ** k, f)


# --------------------------------------------------------------------------
# irreducibility and factorization


def is_irreducible(f):
    """Ben-Or test: no factor of degree <= deg f / 2."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    T = PolyA.T(f.F)
    h = T
    for _ in range(n // 2):
        h = _frob_mod(h, f)
        if not gcd(h - T, f).is_one():
            return False
    return True


def _squarefree(f):
    """Squarefree decomposition of a monic f: list of (g, e) with f = prod g^e."""
    F = f.F
    if f.degree < 1:
        return []
    out = []
    d = f.derivative()
    if not d:
        for g, e in _squarefree(f.pth_root()):
            out.append((g, e * F.p))
        return out
    c = gcd(f, d)
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        z = w // y
        if not z.is_one():
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if not c.is_one():
        for g, e in _squarefree(c.pth_root()):
            out.append((g, e * F.p))
    return out


def _distinct_degree(f):
    F = f.F
    T = PolyA.T(F)
    out = []
    h = T
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = _frob_mod(h, f)
        g = gcd(h - T, f)
        if not g.is_one():
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree(f, d, rng):
    n = f.degree
    if n == d:
        return [f]
    F = f.F
    while True:
        r = PolyA(F, [rng.randrange(F.q) for _ in range(n)])
        if r.degree < 1:
            continue
        if F.p == 2:
            # absolute trace F_{2^(s d)} -> F_2
            acc = r % f
            t = acc
            for _ in range(F.s * d - 1):
                t = powmod(t, 2, f)
                acc = acc + t
            s = acc
        else:
            s = powmod(r, (F.q ** d - 1) // 2, f) - 1
        g = gcd(s, f)
        if 0 < g.degree < n:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factorize(a, seed=0):
    """Factor a nonzero polynomial into monic irreducibles.

    Returns a list of (factor, multiplicity) sorted by (degree, coefficients).
    The leading coefficient is ``a.lc``.
    """
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    f = a.monic()
    counts = {}
    for g, e in _squarefree(f):
        for h, d in _distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                counts[irr] = counts.get(irr, 0) + e
    return sorted(counts.items(), key=lambda t: t[0].sort_key())


def monic_divisors(a):
    """All monic divisors of a nonzero polynomial."""
    divs = [PolyA.const(a.F, 1)]
    for g, e in factorize(a):
        new = []
        for d in divs:
            acc = d
            for _ in range(e):
                acc = acc * g
                new.append(acc)
        divs.extend(new)
    return sorted(divs, key=PolyA.sort_key)


def mobius(n):
    res, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    if m > 1:
        res = -res
    return res


def necklace_count(q, n):
    """Number of monic irreducibles of degree n over F_q."""
    return sum(mobius(e) * q ** (n // e) for e in range(1, n + 1) if n % e == 0) // n


# --------------------------------------------------------------------------
# tables of irreducibles (append-only, optionally persisted)

_IRR_CACHE = {}
_IRR_LOCK = Lock()


def _cache_file(q):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return os.path.join(root, f"irreducibles_q{q}.json")


def _load(q):
    path = _cache_file(q)
    if path and os.path.exists(path):
        with open(path) as fh:
            raw = json.load(fh)
        return {int(n): [tuple(c) for c in cs] for n, cs in raw.items()}
    return {}


def _store(q, table):
    path = _cache_file(q)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump({str(n): [list(c) for c in cs] for n, cs in sorted(table.items())}, fh)
    os.replace(tmp, path)


def _sieve_degree(F, n):
    # monic degree-n polys minus the products of lower-degree monic polys
    q = F.q
    if q ** n > 1 << 16:
        return [t + (1,) for t in _revlex(q, n) if is_irreducible(PolyA._raw(F, t + (1,)))]
    allmonic = {tuple(t) + (1,) for t in product(range(q), repeat=n)}
    reducible = set()
    lower = {}
    for i in range(1, n // 2 + 1):
        if i not in lower:
            lower[i] = [tuple(t) + (1,) for t in product(range(q), repeat=i)]
        if n - i not in lower:
            lower[n - i] = [tuple(t) + (1,) for t in product(range(q), repeat=n - i)]
        for x in lower[i]:
            for y in lower[n - i]:
                reducible.add(tuple(_mul(F, x, y)))
    return sorted(allmonic - reducible, key=lambda c: tuple(reversed(c)))


def _revlex(q, n):
    # tails ordered so that the full coefficient tuples sort by reversed coefficients
    for t in product(range(q), repeat=n):
        yield tuple(reversed(t))


def irreducibles_of_degree(F, n):
    if isinstance(F, int):
        F = GF(F)
    with _IRR_LOCK:
        table = _IRR_CACHE.get(F.q)
        if table is None:
            table = _IRR_CACHE[F.q] = _load(F.q)
        if n not in table:
            table[n] = _sieve_degree(F, n)
            _store(F.q, table)
        coeffs = table[n]
    return [PolyA._raw(F, c) for c in coeffs]


def irreducibles_up_to(F, d):
    """Monic irreducibles of degree 1..d, ordered by degree then coefficients."""
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    out = []
    for n in range(1, d + 1):
        out.extend(irreducibles_of_degree(F, n))
    return out
