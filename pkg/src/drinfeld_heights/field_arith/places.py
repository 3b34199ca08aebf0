"""Places of k, valuations and Newton polygons."""
import math
from dataclasses import dataclass
from fractions import Fraction

from .polya import PolyA, is_irreducible
from .ratfunc import RatFunc

INF = math.inf


@dataclass(frozen=True)
class Place:
    """A place of k: ``Place()`` is infinity, ``Place(P)`` the prime P."""

    P: PolyA = None

    def __post_init__(self):
        if self.P is not None:
            if not self.P.is_monic() or not is_irreducible(self.P):
                raise ValueError(f"{self.P} is not a monic irreducible polynomial")

    @property
    def is_infinite(self):
        return self.P is None

    @property
    def degree(self):
        return 1 if self.P is None else self.P.degree

    def __str__(self):
        return "inf" if self.P is None else f"({self.P})"


def infinity():
    return Place()


def poly_valuation(P, a):
    """Multiplicity of the prime P in the polynomial a (+inf for a = 0)."""
    if not a:
        return INF
    n = 0
    while True:
        qu, r = divmod(a, P)
        if r:
            return n
        a = qu
        n += 1


def valuation(v, x):
    """v(x) for x in k; v_inf = -deg."""
    if isinstance(x, int):
        return INF if x == 0 else 0
    if isinstance(x, PolyA):
        if not x:
            return INF
        return -x.degree if v.P is None else poly_valuation(v.P, x)
    if isinstance(x, RatFunc):
        if not x.num:
            return INF
        if v.P is None:
            return x.den.degree - x.num.degree
        return poly_valuation(v.P, x.num) - poly_valuation(v.P, x.den)
    raise TypeError(f"valuation of {type(x).__name__} is not defined here")


def support(x):
    """Finite places where x in k has nonzero valuation."""
    from .polya import factorize

    x = x if isinstance(x, RatFunc) else RatFunc.from_poly(x)
    out = []
    for part in (x.num, x.den):
        if part.degree > 0:
            out.extend(g for g, _ in factorize(part))
    return sorted(set(out), key=PolyA.sort_key)


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull data: segments (slope, horizontal length), slopes increasing.

    ``zero_roots`` counts the vanishing low-order coefficients (roots equal to 0).
    """

    segments: tuple
    zero_roots: int = 0

    def root_valuations(self):
        """Valuations of the roots with multiplicity, ascending (inf for zero roots).

        The root valuation of a segment is minus its slope, so X - c gives v(c).
        """
        out = []
        for slope, mult in self.segments:
            out.extend([-slope] * mult)
        out.sort()
        out.extend([INF] * self.zero_roots)
        return out

    @property
    def width(self):
        return sum(m for _, m in self.segments)


def lower_hull(points):
    """Lower convex hull of points (x, y) sorted by x; returns vertices."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(coeffs, v):
    """Newton polygon of sum coeffs[i] X^i at the place v.

    ``coeffs`` may be a sequence over A or k, or anything with a ``coeffs``
    attribute (such as :class:`XPoly`).
    """
    coeffs = list(getattr(coeffs, "coeffs", coeffs))
    pts = []
    for i, a in enumerate(coeffs):
        val = valuation(v, a)
        if val != INF:
            pts.append((i, val))
    if not pts:
        raise ValueError("Newton polygon of the zero polynomial")
    if pts[-1][0] == 0 and pts[0][0] == 0:
        raise ValueError("Newton polygon needs degree >= 1")
    hull = lower_hull(pts)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(segs), pts[0][0])


def ramification_bound(polygon):
    """lcm of the slope denominators: a lower bound for the ramification seen on v."""
    out = 1
    for s, _ in polygon.segments:
        out = out * s.denominator // math.gcd(out, s.denominator)
    return out
