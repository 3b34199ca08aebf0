"""Sample generation and aggregate reports behind ``verify``.

Every random choice flows from one ``random.Random(seed)`` per check, so a
report is a pure function of its parameters.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..drinfeld import carlitz, check_frobenius_congruence, cyclotomic_field
from ..field_arith.places import Place
from ..field_arith.polya import irreducibles_up_to, poly_ring
from ..heights import DEFAULT_BUDGET
from .bound import check_carlitz_bound
from .lemmas import (CongruenceParams, check_acceleration, check_congruence, check_lemclef1,
                     check_lemclef2)
from .pigeonhole import (UnitGroup, bounded_representatives, pigeonhole_check, pigeonhole_refined,
                         representatives, subgroups_of_unit_group, subgroups_oracle)
from .report import Report

CHECKS = ("frobenius", "lemclef1", "lemclef2", "accel", "pigeonhole", "pigeonhole-refined",
          "representatives", "carlitz-bound")


@dataclass
class VerifyConfig:
    q: int = 2
    seed: int = 0
    tol: Fraction = Fraction(1, 8)
    budget: object = DEFAULT_BUDGET
    maxdeg: int = 4
    P: object = None
    deg_q: int = None
    m: object = None
    e: int = None
    B: int = 3
    c: int = 2
    count: int = 20
    samples: list = field(default_factory=list)


def default_P(q):
    A = poly_ring(q)
    T = A.T
    return T ** 2 + T + 1 if q == 2 else T ** 2 + 1


def default_lemma_P(q):
    """Place for the lemma checks; for q = 3 a linear P keeps n = 2 and the ambient quadratic."""
    return default_P(q) if q == 2 else poly_ring(q).T


def default_e(q, B):
    """Smallest e with q^e >= 2 B q^2, the shared precondition of both pigeonhole checks."""
    e = 1
    while q ** e < 2 * B * q ** 2:
        e += 1
    return e


def _params(cfg):
    P = cfg.P if cfg.P is not None else default_lemma_P(cfg.q)
    return CongruenceParams(cfg.q, P, cfg.deg_q if cfg.deg_q is not None else P.degree)


def _aggregate(name, params, reports, keep=("x", "v", "y", "c")):
    rows = []
    for r in reports:
        row = {k: r.params[k] for k in keep if k in r.params}
        row["pass"] = r.passed
        if not r.passed or name == "accel":
            row["detail"] = r.witnesses
        rows.append(row)
    ok = all(r.passed for r in reports)
    return Report(name, params, ok, rows, {"samples": len(reports),
                                           "failures": sum(not r.passed for r in reports)})


# --------------------------------------------------------------------------


def verify_frobenius(cfg):
    phi = carlitz(cfg.q)
    per_degree = {}
    failures = []
    for P in irreducibles_up_to(phi.Fq, cfg.maxdeg):
        rep = check_frobenius_congruence(phi, P)
        per_degree[P.degree] = per_degree.get(P.degree, 0) + 1
        if not rep.passed:
            failures.append(rep.as_dict())
    return Report("frobenius", {"q": cfg.q, "maxdeg": cfg.maxdeg}, not failures,
                  {"irreducibles_per_degree": per_degree, "failures": failures})


def lemma_samples(amb, P, rng, count):
    """Elements of amb with poles and zeros at P mixed in."""
    A = poly_ring(amb.q)
    out = []
    for _ in range(count):
        x = amb.random_element(rng, 2, nonzero=True)
        j = rng.randint(-2, 2)
        if j > 0:
            x = x * P ** j
        elif j < 0:
            x = x / P ** (-j)
        u = A.random(rng, 1, nonzero=True)
        out.append(x * u)
    return out


def _places(q, maxdeg=2):
    F = poly_ring(q).F
    return [Place(P) for P in irreducibles_up_to(F, maxdeg)]


def verify_lemclef1(cfg):
    params = _params(cfg)
    rng = random.Random(cfg.seed)
    amb, _ = cyclotomic_field(cfg.q, params.P)
    xs = list(cfg.samples) or lemma_samples(amb, params.P, rng, cfg.count)
    places = _places(cfg.q)
    reports = [check_lemclef1(params, x, rng.choice(places)) for x in xs]
    return _aggregate("lemclef1", {**params.as_dict(), "seed": cfg.seed}, reports)


def verify_lemclef2(cfg):
    params = _params(cfg)
    rng = random.Random(cfg.seed)
    amb, _ = cyclotomic_field(cfg.q, params.P)
    xs = list(cfg.samples) or lemma_samples(amb, params.P, rng, cfg.count)
    reports = [check_lemclef2(params, x) for x in xs]
    return _aggregate("lemclef2", {**params.as_dict(), "seed": cfg.seed}, reports)


def accel_pairs(amb, P, c, rng, count):
    """(x, y) with y = x + P^c z for integral z, plus a few unconstrained pairs."""
    R = poly_ring(amb.q)
    out = []
    for i in range(count):
        x = lemma_samples(amb, P, rng, 1)[0]
        if i % 4 == 3:
            y = lemma_samples(amb, P, rng, 1)[0]
        else:
            z = amb.element([R.random(rng, 2) for _ in range(amb.d)])
            y = x + z * P ** c
        out.append((x, y))
    return out


def verify_accel(cfg):
    params = _params(cfg)
    rng = random.Random(cfg.seed)
    amb, _ = cyclotomic_field(cfg.q, params.P)
    pairs = accel_pairs(amb, params.P, cfg.c, rng, cfg.count)
    reports = [check_acceleration(params, x, y, cfg.c) for x, y in pairs]
    agg = _aggregate("accel", {**params.as_dict(), "seed": cfg.seed, "c": cfg.c, "l": [0, 1, 2]},
                     reports)
    skipped = sum(r.witnesses.get("status") == "hypothesis not satisfied" for r in reports)
    agg.margins["hypothesis_not_satisfied"] = skipped
    return agg


def verify_pigeonhole(cfg, refined=False):
    A = poly_ring(cfg.q)
    m = A.T if cfg.m is None else cfg.m
    e = cfg.e if cfg.e is not None else default_e(cfg.q, cfg.B)
    G = UnitGroup(cfg.q, m, e)
    subs = subgroups_of_unit_group(G, cfg.B)
    rows = []
    ok = True
    for H in subs:
        r = pigeonhole_refined(G, H, cfg.B) if refined else pigeonhole_check(G, H, cfg.B)
        rows.append({"index": H.index, "order": H.order, "pass": r.passed, **r.witnesses,
                     "margins": r.margins})
        ok = ok and r.passed
    oracle = None
    if G.order <= 2 ** 12:
        oracle = {H.keys for H in subs} == set(subgroups_oracle(G, cfg.B))
        ok = ok and oracle
    _, d_m, bound = bounded_representatives(m)
    name = "pigeonhole-refined" if refined else "pigeonhole"
    return Report(name, {"q": cfg.q, "m": str(m), "e": e, "B": cfg.B, "N": cfg.q ** 2,
                         "d_m": d_m, "group": G.as_dict()}, ok, rows,
                  {"subgroups": len(subs), "oracle_agrees": oracle})


def verify_representatives(cfg):
    A = poly_ring(cfg.q)
    m = A.T if cfg.m is None else cfg.m
    e = cfg.e if cfg.e is not None else 3
    R0, d_m, bound = bounded_representatives(m)
    R = representatives(m, e, R0)
    return Report("representatives", {"q": cfg.q, "m": str(m), "e": e}, d_m <= bound,
                  {"R0": [str(r) for r in R0], "size": len(R), "d_m": d_m,
                   "d_m_bound": bound}, {"bound_slack": bound - d_m})


def default_bound_samples(amb):
    l = amb.gen
    T = poly_ring(amb.q).T
    return [l + 1, l + T, l * l + l]


def verify_carlitz_bound(cfg):
    P = cfg.P if cfg.P is not None else default_P(cfg.q)
    amb, _ = cyclotomic_field(cfg.q, P)
    xs = list(cfg.samples) or default_bound_samples(amb)
    return check_carlitz_bound(cfg.q, P, xs, cfg.tol, cfg.budget)


def verify_congruence_table(cfg):
    """C_{P^nu} = tau^n mod P for every P of degree <= 3 and every admissible deg_q <= 3."""
    F = poly_ring(cfg.q).F
    rows = []
    for P in irreducibles_up_to(F, 3):
        for dq in range(1, 4):
            if ((cfg.q - 1) * dq) % P.degree:
                continue
            rows.append(check_congruence(CongruenceParams(cfg.q, P, dq)))
    return _aggregate("congruence", {"q": cfg.q}, rows, keep=("P", "deg_q"))


RUNNERS = {
    "frobenius": verify_frobenius,
    "lemclef1": verify_lemclef1,
    "lemclef2": verify_lemclef2,
    "accel": verify_accel,
    "pigeonhole": verify_pigeonhole,
    "pigeonhole-refined": lambda cfg: verify_pigeonhole(cfg, refined=True),
    "representatives": verify_representatives,
    "carlitz-bound": verify_carlitz_bound,
}


def _run_named(args):
    name, sub = args
    return RUNNERS[name](sub).as_dict()


def verify_all(cfg, workers=1):
    """Every check with its default parameters; check i uses seed + i."""
    jobs = [(name, VerifyConfig(q=cfg.q, seed=cfg.seed + i, tol=cfg.tol, budget=cfg.budget,
                                maxdeg=cfg.maxdeg, B=cfg.B, c=cfg.c, count=cfg.count))
            for i, name in enumerate(CHECKS)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_named, jobs))
    else:
        reports = [_run_named(j) for j in jobs]
    ok = all(r["pass"] for r in reports)
    return Report("all", {"q": cfg.q, "seed": cfg.seed}, ok, reports,
                  {r["check"]: r["pass"] for r in reports})
