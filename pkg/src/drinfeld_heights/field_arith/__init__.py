"""Arithmetic of F_q, A = F_q[T], k = F_q(T), places, and finite extensions of k."""
from .algebraic import AlgebraicElement, Ambient, conjugate_valuations, min_poly, rational_ambient
from .fq import GF, FiniteField
from .parse import ParseError, parse_element, parse_ore, parse_poly, parse_xpoly
from .places import NewtonPolygon, Place, infinity, newton_polygon, valuation
from .polya import PolyA, factorize, irreducibles_of_degree, irreducibles_up_to, is_irreducible, poly_ring
from .ratfunc import FunctionField, RatFunc
from .xpoly import XPoly

__all__ = [
    "AlgebraicElement", "Ambient", "FiniteField", "FunctionField", "GF", "NewtonPolygon",
    "ParseError", "Place", "PolyA", "RatFunc", "XPoly", "conjugate_valuations", "factorize",
    "infinity", "irreducibles_of_degree", "irreducibles_up_to", "is_irreducible", "min_poly",
    "newton_polygon", "parse_element", "parse_ore", "parse_poly", "parse_xpoly", "poly_ring",
    "rational_ambient", "valuation",
]
