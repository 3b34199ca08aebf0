"""Explicit lower bound for the Carlitz canonical height on cyclotomic samples."""
import math
from fractions import Fraction

from ..drinfeld import carlitz
from ..heights import DEFAULT_BUDGET, BudgetExceeded, canonical_height, gamma_bound, is_torsion
from .report import Report


def threshold_exponent(q, gamma):
    """E with threshold q^(-E), E = 11 q gamma."""
    return 11 * q * Fraction(gamma)


def exceeds(lo, q, E):
    """lo > q^(-E) exactly, also for rational E = a/b: lo^b q^a > 1."""
    if lo <= 0:
        return False
    E = Fraction(E)
    return lo ** E.denominator * Fraction(q) ** E.numerator > 1


def log_margin(lo, q, E):
    """log_q(lo / q^(-E))."""
    return math.log(lo.numerator, q) - math.log(lo.denominator, q) + float(E)


def certified_lower(phi, x, tol, budget):
    """Shrink tol until the certified interval has positive lower endpoint."""
    tol = Fraction(tol)
    while True:
        iv = canonical_height(phi, x, tol, budget)
        if iv.lo > 0 or iv.width == 0:
            return iv
        tol /= 4


def check_carlitz_bound(q, P, samples, tol=Fraction(1, 8), budget=DEFAULT_BUDGET):
    C = carlitz(q)
    gamma = gamma_bound(C).gamma
    E = threshold_exponent(q, gamma)
    rows = []
    ok = True
    factors = []
    for x in samples:
        cert = is_torsion(C, x)
        if cert.torsion:
            rows.append({"x": str(x), "torsion": True, "certificate": cert.as_dict()})
            continue
        try:
            iv = certified_lower(C, x, tol, budget)
        except BudgetExceeded as exc:
            rows.append({"x": str(x), "torsion": False, "error": str(exc)})
            ok = False
            continue
        good = exceeds(iv.lo, q, E)
        lm = log_margin(iv.lo, q, E) if iv.lo > 0 else float("-inf")
        ok = ok and good
        factors.append(lm)
        rows.append({"x": str(x), "torsion": False, "certificate": cert.as_dict(),
                     "hhat": iv.as_dict(), "exceeds": good,
                     "log_q_margin": round(lm, 6)})
    margins = {"threshold": f"{q}^-{E}"}
    if factors:
        lm = min(factors)
        margins["min_log_q_margin"] = round(lm, 6)
        margins["margin_gt_1"] = lm > 0
        margins["min_margin_factor"] = f"{q}^{round(lm, 6)}"
    params = {"q": q, "P": str(P), "gamma": gamma, "tol": Fraction(tol),
              "c1": f"7*(q-1)*gamma = {7 * (q - 1) * gamma}",
              "c2": f"4^q = {4 ** q}"}
    return Report("carlitz-bound", params, ok, rows, margins)
