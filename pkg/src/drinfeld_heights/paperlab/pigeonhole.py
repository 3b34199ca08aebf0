"""Unit groups of A/m^e, their small-index subgroups, and pigeonhole pairs.

Group elements are residues mod m^e stored as PolyA; sets of them are keyed by
the coefficient tuple.  Subgroups are found from an explicit basis of the
finite abelian group and Hermite-normal-form sublattices of its coordinate
lattice; a join-closure enumeration is kept as an independent oracle.
"""
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from ..field_arith.polya import PolyA, is_irreducible, poly_ring
from .report import Report

ORACLE_CAP = 2 ** 20


def _key(a):
    return a.c


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class UnitGroup:
    """(A/m^e)^x for m monic irreducible."""

    def __init__(self, q, m, e):
        A = poly_ring(q)
        m = A(m)
        if not m.is_monic() or not is_irreducible(m):
            raise ValueError(f"{m} is not monic irreducible")
        if e < 1:
            raise ValueError("e must be positive")
        self.q, self.A, self.m, self.e = q, A, m, e
        self.M = m ** e
        self._basis = None
        self._elements = None

    @property
    def order(self):
        dm = self.m.degree
        return self.q ** ((self.e - 1) * dm) * (self.q ** dm - 1)

    def one(self):
        return self.A.one

    def mul(self, a, b):
        return (a * b) % self.M

    def pow(self, a, n):
        out = self.A.one
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def reduce(self, a):
        return self.A(a) % self.M

    def contains_unit(self, a):
        return bool(self.reduce(a) % self.m)

    def elements(self):
        if self._elements is None:
            self._elements = [a for a in self.A.of_degree_below(self.M.degree) if a % self.m]
        return self._elements

    def element_order(self, a):
        n = self.order
        for p in _prime_factors(n):
            while n % p == 0 and self.pow(a, n // p).is_one():
                n //= p
        return n

    # -- structure -----------------------------------------------------------

    def basis(self):
        """Generators g_i with orders n_i (prime powers) such that G = prod <g_i>."""
        if self._basis is not None:
            return self._basis
        N = self.order
        out = []
        for p in _prime_factors(N):
            k = 0
            while N % p ** (k + 1) == 0:
                k += 1
            cof = N // p ** k
            sylow = {}
            for a in self.elements():
                b = self.pow(a, cof)
                sylow.setdefault(_key(b), b)
            out.extend(self._pgroup_basis(p, sorted(sylow.values(), key=PolyA.sort_key)))
        self._basis = out
        return out

    def _pgroup_basis(self, p, S):
        """Greedy max-order search with coset lifting, deterministic in the order of S."""
        H = {_key(self.A.one): self.A.one}
        gens = []
        while len(H) < len(S):
            best, best_ord = None, 1
            for g in S:
                if _key(g) in H:
                    continue
                o, y = 1, g
                while _key(y) not in H:
                    y = self.pow(y, p)
                    o *= p
                if o > best_ord:
                    best, best_ord = g, o
            # g^o lies in H; pick the coset element of smallest order, which is o
            lift = None
            for h in sorted(H.values(), key=PolyA.sort_key):
                cand = self.mul(best, h)
                if self.pow(cand, best_ord).is_one():
                    lift = cand
                    break
            assert lift is not None, "coset lifting failed"
            gens.append((lift, best_ord))
            newH = dict(H)
            y = lift
            for _ in range(best_ord - 1):
                for h in H.values():
                    z = self.mul(y, h)
                    newH.setdefault(_key(z), z)
                y = self.mul(y, lift)
            H = newH
        return gens

    def invariants(self):
        return sorted(n for _, n in self.basis())

    def from_coords(self, vec):
        out = self.A.one
        for (g, _), x in zip(self.basis(), vec):
            out = self.mul(out, self.pow(g, x))
        return out

    def generated(self, gens):
        """Subgroup generated by gens, as frozenset of keys."""
        H = {_key(self.A.one): self.A.one}
        for g in gens:
            if _key(g) in H:
                continue
            frontier = list(H.values())
            y = g
            while _key(y) not in H:
                for h in frontier:
                    z = self.mul(y, h)
                    H.setdefault(_key(z), z)
                y = self.mul(y, g)
        return frozenset(H)

    def as_dict(self):
        return {"q": self.q, "m": str(self.m), "e": self.e, "order": self.order,
                "invariants": self.invariants()}


@dataclass(frozen=True)
class Subgroup:
    group: UnitGroup
    keys: frozenset
    generators: tuple

    @property
    def order(self):
        return len(self.keys)

    @property
    def index(self):
        return self.group.order // len(self.keys)

    def __contains__(self, a):
        return _key(self.group.reduce(a)) in self.keys


def _hnf_matrices(r, j):
    """Upper triangular HNF bases (columns) of all index-j sublattices of Z^r."""
    def diagonals(r, j):
        if r == 0:
            if j == 1:
                yield ()
            return
        for d in range(1, j + 1):
            if j % d == 0:
                for rest in diagonals(r - 1, j // d):
                    yield (d,) + rest

    for diag in diagonals(r, j):
        # column k has pivot diag[k] at row k; entry (i, k) above it is reduced mod diag[i]
        slots = [(i, k) for k in range(r) for i in range(k)]
        ranges = [range(diag[i]) for i, _ in slots]
        for vals in itertools.product(*ranges):
            M = [[0] * r for _ in range(r)]
            for k in range(r):
                M[k][k] = diag[k]
            for (i, k), a in zip(slots, vals):
                M[i][k] = a
            yield M


def _lattice_contains(M, vec):
    """Whether vec lies in the column span of the upper triangular integer matrix M."""
    r = len(M)
    v = list(vec)
    for k in reversed(range(r)):
        if v[k] % M[k][k]:
            return False
        t = v[k] // M[k][k]
        for i in range(k + 1):
            v[i] -= t * M[i][k]
    return all(x == 0 for x in v)


def subgroups_of_unit_group(group, B, max_subgroups=10 ** 5, seed=0):
    """All subgroups H of index < B, sorted by (index, smallest generators)."""
    if B < 2:
        raise ValueError("B must be at least 2")
    basis = group.basis()
    orders = [n for _, n in basis]
    r = len(basis)
    found = {}
    count = 0
    for j in range(1, B):
        if group.order % j:
            continue
        for M in _hnf_matrices(r, j):
            count += 1
            if count > max_subgroups:
                return _sampled_kernels(group, B, seed, found)
            if not all(_lattice_contains(M, [n if i == t else 0 for i in range(r)])
                       for t, n in enumerate(orders)):
                continue
            gens = tuple(group.from_coords([M[i][k] for i in range(r)]) for k in range(r))
            keys = group.generated(gens)
            found.setdefault(keys, Subgroup(group, keys, gens))
    return sorted(found.values(), key=lambda H: (H.index, sorted(H.keys)))


def _sampled_kernels(group, B, seed, found):
    """Fallback for huge groups: kernels of random characters of order < B."""
    rng = random.Random(seed)
    orders = [n for _, n in group.basis()]
    for _ in range(64):
        j = rng.randrange(1, B)
        chi = [rng.randrange(j) * (n // j) if n % j == 0 else 0 for n in orders]
        # kernel of x -> sum chi_i x_i / n_i mod 1
        pts = [v for v in itertools.product(*[range(n) for n in orders])
               if sum(Fraction(c * x, n) for c, x, n in zip(chi, v, orders)).denominator == 1]
        gens = tuple(group.from_coords(v) for v in pts[:8])
        keys = frozenset(_key(group.from_coords(v)) for v in pts)
        if group.order // len(keys) < B:
            found.setdefault(keys, Subgroup(group, keys, gens))
    return sorted(found.values(), key=lambda H: (H.index, sorted(H.keys)))


def subgroups_oracle(group, B):
    """Every subgroup by closing cyclic subgroups under joins, then filtering by index."""
    if group.order > ORACLE_CAP:
        raise ValueError("group too large for the brute-force oracle")
    elems = group.elements()
    cyclic = {group.generated([g]) for g in elems}
    elem_of = {_key(a): a for a in elems}
    allsub = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = group.generated([elem_of[k] for k in H | C])
                if J not in allsub:
                    new.add(J)
        allsub |= new
        frontier = new
    return sorted((H for H in allsub if group.order // len(H) < B), key=lambda H: (len(H), sorted(H)))


# --------------------------------------------------------------------------
# representatives


def bounded_representatives(m):
    """R0 = residues of degree < deg m, with d_m = max degree (0 when deg m = 1)."""
    A = poly_ring(m.F.q)
    R0 = list(A.of_degree_below(m.degree))
    d_m = max((r.degree for r in R0), default=0)
    d_m = max(d_m, 0)
    return R0, d_m, m.degree


def representatives(m, e, R0=None):
    """R = {sum_{i<e} lambda_i m^i : lambda_i in R0}, validated as a system mod m^e."""
    q = m.F.q
    if R0 is None:
        R0 = bounded_representatives(m)[0]
    R0 = list(R0)
    if len(R0) != q ** m.degree:
        raise ValueError(f"R0 has {len(R0)} elements, expected {q ** m.degree}")
    if len({_key(r % m) for r in R0}) != len(R0):
        raise ValueError("R0 is not a system of representatives mod m")
    powers = [m ** i for i in range(e)]
    R = []
    for lam in itertools.product(R0, repeat=e):
        R.append(sum((l * p for l, p in zip(lam, powers)), m * 0))
    M = m ** e
    if len({_key(r % M) for r in R}) != q ** (e * m.degree):
        raise ValueError("R is not a system of representatives mod m^e")
    return R


# --------------------------------------------------------------------------
# pigeonhole


@dataclass(frozen=True)
class PigeonholePair:
    a: PolyA
    b: PolyA
    c: int
    alpha: PolyA
    hits: int

    @property
    def gap_degree(self):
        return (self.b - self.a).degree


def _min_c(q, X, dm):
    """Smallest c with q^(c dm) >= X, i.e. ceil(log_q(X) / dm)."""
    c = 0
    while q ** (c * dm) < X:
        c += 1
    return c


def pigeonhole_find(group, H, B, N=None):
    """a != b in R with residues in H, deg(b-a) >= 2 and q^deg(b-a) < 2NB q^(d_m)."""
    q, m, e = group.q, group.m, group.e
    if B < 2:
        raise ValueError("B must be at least 2")
    if H.index >= B:
        raise ValueError(f"subgroup index {H.index} is not < B = {B}")
    N = q ** 2 if N is None else N
    if q ** e < 2 * N * B:
        raise ValueError(f"precondition q^e >= 2NB fails: {q}^{e} < {2 * N * B}")
    R0, d_m, _ = bounded_representatives(m)
    c = _min_c(q, 2 * N * B, m.degree)
    assert c <= e
    powers = [m ** i for i in range(e)]
    zero = m * 0
    low = [sum((l * p for l, p in zip(lam, powers[:c])), zero)
           for lam in itertools.product(R0, repeat=c)]
    for lam in itertools.product(R0, repeat=e - c):
        alpha = sum((l * p for l, p in zip(lam, powers[c:])), zero)
        hits = [t + alpha for t in low if (t + alpha) % m and (t + alpha) in H]
        if len(hits) < N + 1:
            continue
        hits.sort(key=PolyA.sort_key)
        a = hits[0]
        for b in hits[1:]:
            if (b - a).degree >= 2:
                return PigeonholePair(a, b, c, alpha, len(hits))
        raise AssertionError("no pair with deg(b-a) >= 2 among N+1 hits")
    raise AssertionError("no coset I_alpha met H in N+1 points")


def _mu(phi, a):
    return phi.action(a).mu()


def pigeonhole_check(group, H, B, N=None):
    q, e = group.q, group.e
    N = q ** 2 if N is None else N
    pair = pigeonhole_find(group, H, B, N)
    _, d_m, bound = bounded_representatives(group.m)
    g = pair.gap_degree
    upper = 2 * N * B * q ** d_m
    ok = 2 < q ** g < upper and pair.a in H and pair.b in H and pair.a != pair.b
    return Report(
        "pigeonhole",
        {"q": q, "m": str(group.m), "e": e, "B": B, "N": N, "index": H.index},
        ok,
        {"a": str(pair.a), "b": str(pair.b), "c": pair.c, "alpha": str(pair.alpha),
         "hits": pair.hits, "deg(b-a)": g, "d_m": d_m, "d_m_bound": bound},
        {"lower": Fraction(q ** g, 2), "upper": Fraction(upper, q ** g)},
    )


def pigeonhole_refined(group, H, B, phi=None):
    """Pair with deg a = deg b and equal leading coefficients of phi_a, phi_b."""
    from ..drinfeld import carlitz

    q, m, e = group.q, group.m, group.e
    phi = carlitz(q) if phi is None else phi
    if phi.rank != 1 or not phi.over_k:
        raise ValueError("the refined pigeonhole needs a rank one module over k")
    if q ** e < 2 * B * q ** 2:
        raise ValueError(f"precondition q^e >= 2Bq^2 fails: {q}^{e} < {2 * B * q ** 2}")
    base = pigeonhole_find(group, H, B, q ** 2)
    A = group.A
    lam = A.T ** (max(base.a.degree, base.b.degree) + 1)
    a = base.a + lam * group.M
    b = base.b + lam * group.M
    _, d_m, _ = bounded_representatives(m)
    mu_a, mu_b = _mu(phi, a), _mu(phi, b)
    g = (b - a).degree
    upper = 2 * B * q ** (2 + d_m)
    law = mu_law_holds(phi, a, b)
    ok = (a in H and b in H and a.degree == b.degree and mu_a == mu_b
          and 2 < q ** g < upper and law)
    return Report(
        "pigeonhole-refined",
        {"q": q, "m": str(m), "e": e, "B": B, "index": H.index, "phi_T": str(phi.phi_T)},
        ok,
        {"a": str(a), "b": str(b), "a'": str(base.a), "b'": str(base.b), "lambda": str(lam),
         "deg_a": a.degree, "deg_b": b.degree, "mu_a": str(mu_a), "mu_b": str(mu_b),
         "deg(b-a)": g, "mu_law": law},
        {"lower": Fraction(q ** g, 2), "upper": Fraction(upper, q ** g)},
    )


def rank_one_mu(phi, c):
    """Leading coefficient of phi_c for rank one phi_T = T + g tau: lc(c) g^((q^n-1)/(q-1))."""
    g = phi.phi_T.mu()
    n = c.degree
    return g ** ((phi.q ** n - 1) // (phi.q - 1)) * PolyA.const(phi.Fq, c.lc)


def mu_law_holds(phi, a, b):
    """mu(ab) = mu(a) mu(b)^(q^(r deg a)), with mu(ab) from the rank one closed form."""
    lhs = rank_one_mu(phi, a * b)
    rhs = _mu(phi, a) * _mu(phi, b) ** (phi.q ** (phi.rank * a.degree))
    return lhs == rhs
