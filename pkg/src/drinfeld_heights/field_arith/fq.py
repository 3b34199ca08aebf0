"""Finite fields F_q for the small q used throughout the package.

Elements are plain ints in ``range(q)``: the base-p digits of the int are the
coordinates in the basis 1, g, g^2, ... where g is the class of x modulo the
fixed (Conway) modulus below.  All arithmetic goes through precomputed tables.
"""
from functools import lru_cache

SUPPORTED_Q = frozenset({2, 3, 4, 5, 7, 8, 9})

# q -> (p, coefficients of the monic modulus over F_p, lowest degree first)
MODULI = {
    4: (2, (1, 1, 1)),        # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),     # x^3 + x + 1
    9: (3, (2, 2, 1)),        # x^2 + 2x + 2
}

_PRIMES = {2, 3, 5, 7}


def _digits(a, p, s):
    out = []
    for _ in range(s):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p):
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


class FiniteField:
    """The field with q elements.  Use :func:`GF` to get the cached instance."""

    def __init__(self, q):
        if q not in SUPPORTED_Q:
            raise ValueError(f"unsupported q={q}; supported: {sorted(SUPPORTED_Q)}")
        self.q = q
        if q in _PRIMES:
            self.p, self.s, self.modulus = q, 1, None
        else:
            self.p, self.modulus = MODULI[q]
            self.s = len(self.modulus) - 1
        self.is_prime = self.s == 1
        self._build_tables()

    def _build_tables(self):
        q, p, s = self.q, self.p, self.s
        if self.is_prime:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            dig = [_digits(a, p, s) for a in range(q)]
            self.add = [[_undigits([(x + y) % p for x, y in zip(dig[a], dig[b])], p)
                         for b in range(q)] for a in range(q)]
            mod = self.modulus
            mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(q):
                    prod = [0] * (2 * s - 1)
                    for i, x in enumerate(dig[a]):
                        for j, y in enumerate(dig[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                    for k in range(2 * s - 2, s - 1, -1):
                        c = prod[k]
                        if c:
                            prod[k] = 0
                            for j in range(s):
                                prod[k - s + j] = (prod[k - s + j] - c * mod[j]) % p
                    mul[a][b] = _undigits(prod[:s], p)
            self.mul = mul
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]
        self.inv = [0] + [next(b for b in range(1, q) if self.mul[a][b] == 1)
                          for a in range(1, q)]
        # generator of the multiplicative group and discrete logs
        cands = [p] if not self.is_prime else range(1, q)
        for g in cands:
            seen, x = [], 1
            while True:
                seen.append(x)
                x = self.mul[x][g]
                if x == 1:
                    break
            if len(seen) == q - 1:
                break
        else:
            raise AssertionError("modulus must be primitive")
        self.gen = g
        self.powers = seen
        self.log = {x: i for i, x in enumerate(seen)}

    # -- scalar helpers -------------------------------------------------
    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse in F_q")
            return 0 if n else 1
        return self.powers[(self.log[a] * n) % (self.q - 1)]

    def from_int(self, n):
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def pth_root(self, a):
        # x -> x^p is an automorphism; its inverse is x -> x^(q/p)
        return self.pow(a, self.q // self.p)

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def fmt(self, a):
        if self.is_prime or a in (0, 1):
            return str(a)
        k = self.log[a]
        return "g" if k == 1 else f"g^{k}"

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (GF, (self.q,))


@lru_cache(maxsize=None)
def GF(q):
    return FiniteField(q)
