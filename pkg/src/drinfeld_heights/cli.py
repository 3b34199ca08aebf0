"""Command-line front end: height, canon, verify, search.

Exit codes: 0 success or all checks pass, 2 usage or parse error, 3 math
error or failed check, 4 budget exhausted.
"""
import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .drinfeld import DrinfeldModule, carlitz, cyclotomic_field
from .field_arith.algebraic import min_poly
from .field_arith.parse import ParseError, ambient_from_minpoly, parse_element, parse_ore, parse_poly
from .field_arith.xpoly import format_xpoly
from .heights import (CSV_COLUMNS, Budget, BudgetExceeded, canonical_height, is_torsion,
                      min_height_search, weil_height)
from .paperlab.report import jsonable
from .paperlab.suite import CHECKS, RUNNERS, VerifyConfig, verify_all

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_BUDGET = 0, 2, 3, 4
SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    q: int = 2
    seed: int = 0
    tol: Fraction = Fraction(1, 8)
    budget: int = 20
    output: str = "text"
    workers: int = 1

    def __post_init__(self):
        if self.q not in SUPPORTED_Q:
            raise UsageError(f"unsupported q = {self.q}")
        if self.tol <= 0:
            raise UsageError("tolerance must be positive")
        if self.budget < 1:
            raise UsageError("budget must be positive")

    @property
    def budget_obj(self):
        return Budget(max_iterations=self.budget)


def _fraction(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational p/q: {s!r}")


def _common(p):
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_fraction, default=Fraction(1, 8))
    p.add_argument("--budget", type=int, default=20, help="max phi_T iterations")
    p.add_argument("--output", choices=("text", "json", "csv"), default="text")
    p.add_argument("--workers", type=int, default=1)


def build_parser():
    ap = argparse.ArgumentParser(prog="drinfeld-heights",
                                 description="Heights on Drinfeld modules over F_q(T).")
    sub = ap.add_subparsers(dest="cmd", required=True)

    h = sub.add_parser("height", help="exact Weil height")
    _common(h)
    g = h.add_mutually_exclusive_group(required=True)
    g.add_argument("--elem")
    g.add_argument("--minpoly")
    h.add_argument("--P", help="cyclotomic P binding 'l'")

    c = sub.add_parser("canon", help="certified canonical height interval")
    _common(c)
    c.add_argument("--module", default="carlitz")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--elem")
    g.add_argument("--minpoly")
    c.add_argument("--P", help="cyclotomic P binding 'l'")
    c.add_argument("--base", default="T", help="nonconstant a in A used to iterate phi_a")

    v = sub.add_parser("verify", help="run a numerical check")
    _common(v)
    v.add_argument("check")
    v.add_argument("--maxdeg", type=int, default=4)
    v.add_argument("--P")
    v.add_argument("--deg-q", dest="deg_q", type=int)
    v.add_argument("--m")
    v.add_argument("--e", type=int)
    v.add_argument("--B", type=int, default=3)
    v.add_argument("--c", type=int, default=2)
    v.add_argument("--count", type=int, default=20)
    v.add_argument("--sample", action="append", default=[])

    s = sub.add_parser("search", help="small-height search over ambients")
    _common(s)
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--D", type=int, default=2)
    s.add_argument("--module", default="carlitz")
    return ap


def _config(ns):
    return RunConfig(ns.q, ns.seed, ns.tol, ns.budget, ns.output, ns.workers)


def _module(spec, q):
    if spec == "carlitz":
        return carlitz(q)
    try:
        return DrinfeldModule(parse_ore(spec, q), q)
    except ParseError:
        raise
    except ValueError as exc:
        raise UsageError(f"bad module spec {spec!r}: {exc}")


def _element(ns, q):
    """(element, echo of its minimal polynomial)."""
    if getattr(ns, "minpoly", None):
        amb = ambient_from_minpoly(ns.minpoly, q)
        return amb.gen, format_xpoly(amb.f)
    amb = None
    if getattr(ns, "P", None):
        amb, _ = cyclotomic_field(q, parse_poly(ns.P, q))
    x = parse_element(ns.elem, q, amb)
    if amb is not None:
        x = amb(x)
        return x, format_xpoly(min_poly(x).coeffs)
    return x, None


def _emit(payload, cfg, text_lines, out):
    if cfg.output == "json":
        doc = {"schema": SCHEMA, **jsonable(payload)}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def cmd_height(ns, cfg, out):
    x, mp = _element(ns, cfg.q)
    h = weil_height(x)
    payload = {"command": "height", "q": cfg.q, "input": ns.elem or ns.minpoly,
               "min_poly": mp, "height": h}
    _emit(payload, cfg, [f"{h}"], out)
    return EXIT_OK


def cmd_canon(ns, cfg, out):
    phi = _module(ns.module, cfg.q)
    x, mp = _element(ns, cfg.q)
    base = parse_poly(ns.base, cfg.q)
    if base.degree < 1:
        raise UsageError("--base must be a nonconstant polynomial")
    payload = {"command": "canon", "q": cfg.q, "module": str(phi.phi_T),
               "input": ns.elem or ns.minpoly, "min_poly": mp, "tol": cfg.tol}
    if base != phi.A.T:
        payload["base"] = str(base)
    cert = is_torsion(phi, x)
    payload["torsion"] = cert.as_dict()
    try:
        iv = canonical_height(phi, x, cfg.tol, cfg.budget_obj, base)
        code = EXIT_OK
    except BudgetExceeded as exc:
        iv = exc.partial
        payload["budget_exceeded"] = str(exc)
        code = EXIT_BUDGET
    if cert.torsion and not iv.contains(0):
        raise AssertionError("torsion point with canonical height interval away from 0")
    payload["hhat"] = iv.as_dict()
    lines = [f"hhat in [{iv.lo}, {iv.hi}] after {iv.iterations} iterations"]
    if cert.torsion:
        lines.append(f"torsion: annihilator {cert.annihilator}")
    else:
        lines.append(f"non-torsion: h(phi_T^{cert.index} x) = {cert.height} > gamma = {cert.gamma}")
    if code == EXIT_BUDGET:
        lines.append(f"budget exceeded: {payload['budget_exceeded']}")
    _emit(payload, cfg, lines, out)
    return code


def _verify_config(ns, cfg):
    q = cfg.q
    vc = VerifyConfig(q=q, seed=cfg.seed, tol=cfg.tol, budget=cfg.budget_obj, maxdeg=ns.maxdeg,
                      B=ns.B, c=ns.c, count=ns.count, deg_q=ns.deg_q, e=ns.e)
    if ns.P:
        vc.P = parse_poly(ns.P, q)
    if ns.m:
        vc.m = parse_poly(ns.m, q)
    if ns.sample:
        amb = None
        if ns.check in ("lemclef1", "lemclef2", "carlitz-bound"):
            from .paperlab.suite import _params, default_P

            P = vc.P if vc.P is not None else (
                default_P(q) if ns.check == "carlitz-bound" else _params(vc).P)
            vc.P = P
            amb, _ = cyclotomic_field(q, P)
        xs = [parse_element(s, q, amb) for s in ns.sample]
        vc.samples = [amb(x) if amb is not None else x for x in xs]
    return vc


def _report_lines(rep):
    d = rep if isinstance(rep, dict) else rep.as_dict()
    lines = [f"{d['check']}: {'PASS' if d['pass'] else 'FAIL'}"]
    for k, v in sorted(d["margins"].items()):
        if not isinstance(v, (dict, list)):
            lines.append(f"  {k} = {v}")
    if d["check"] == "all":
        for sub in d["witnesses"]:
            lines.append(f"  {sub['check']}: {'PASS' if sub['pass'] else 'FAIL'}")
    return lines


def cmd_verify(ns, cfg, out):
    if ns.check != "all" and ns.check not in CHECKS:
        raise UsageError(f"unknown check {ns.check!r}; choose from {', '.join(CHECKS + ('all',))}")
    if cfg.output == "csv":
        raise UsageError("verify reports are text or json")
    vc = _verify_config(ns, cfg)
    rep = verify_all(vc, workers=cfg.workers) if ns.check == "all" else RUNNERS[ns.check](vc)
    d = rep.as_dict()
    _emit(d, cfg, _report_lines(d), out)
    return EXIT_OK if d["pass"] else EXIT_MATH


def cmd_search(ns, cfg, out):
    phi = _module(ns.module, cfg.q)
    res = min_height_search(phi, ns.d, ns.D, cfg.tol, cfg.budget_obj, cfg.workers)
    if res.best is None:
        summary = "# summary: no non-torsion element in range"
    else:
        b = res.best
        summary = (f"# summary: min positive hhat midpoint {(b.hhat_lo + b.hhat_hi) / 2} "
                   f"at {b.minpoly}")
    if res.partial:
        summary += " (partial: budget exceeded for some rows)"
    if cfg.output == "json":
        payload = {"command": "search", "q": cfg.q, "d": ns.d, "D": ns.D,
                   "module": str(phi.phi_T), "columns": list(CSV_COLUMNS),
                   "rows": [r.row() for r in res.records], "summary": summary,
                   "partial": res.partial}
        _emit(payload, cfg, [], out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerows(res.csv_rows())
        out.write(buf.getvalue())
        out.write(summary + "\n")
    return EXIT_BUDGET if res.partial else EXIT_OK


COMMANDS = {"height": cmd_height, "canon": cmd_canon, "verify": cmd_verify, "search": cmd_search}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _config(ns)
        return COMMANDS[ns.cmd](ns, cfg, out)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, ArithmeticError, AssertionError) as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
