#!/usr/bin/env python3
"""Lower bound check for the Carlitz module on a cyclotomic field.

Example:
    python scripts/carlitz_bound_demo.py --q 2 --P "T^2+T+1" --sample "l^2+l" --sample "l+T"
"""
import argparse
import json

from drinfeld_heights.drinfeld import cyclotomic_field
from drinfeld_heights.field_arith.parse import parse_element, parse_poly
from drinfeld_heights.paperlab import check_carlitz_bound
from drinfeld_heights.paperlab.report import jsonable


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--P", default="T^2+T+1")
    ap.add_argument("--sample", action="append")
    args = ap.parse_args()

    P = parse_poly(args.P, args.q)
    amb, _ = cyclotomic_field(args.q, P)
    samples = [parse_element(s, args.q, amb) for s in (args.sample or ["l+1", "l+T", "l^2+l"])]
    rep = check_carlitz_bound(args.q, P, samples)
    for w in rep.witnesses:
        if w["torsion"]:
            print(f"{w['x']:>24}  torsion, annihilator {w['certificate']['annihilator']}")
        else:
            lo, hi = w["hhat"]["lo"], w["hhat"]["hi"]
            print(f"{w['x']:>24}  hhat in [{lo}, {hi}]  exceeds threshold: {w['exceeds']}")
    print(json.dumps(jsonable(rep.margins), sort_keys=True))
    return 0 if rep.passed else 3


if __name__ == "__main__":
    raise SystemExit(main())
