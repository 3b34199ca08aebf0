#!/usr/bin/env python3
"""Smallest positive canonical height among algebraic elements of bounded degree.

Writes the CSV table to stdout; the summary goes to stderr.
"""
import argparse
import csv
import sys
from fractions import Fraction

from drinfeld_heights.drinfeld import carlitz
from drinfeld_heights.heights import min_height_search


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--d", type=int, default=1, help="max degree over k")
    ap.add_argument("--D", type=int, default=2, help="max coefficient degree")
    ap.add_argument("--tol", type=Fraction, default=Fraction(1, 8))
    args = ap.parse_args()

    res = min_height_search(carlitz(args.q), args.d, args.D, args.tol)
    csv.writer(sys.stdout, lineterminator="\n").writerows(res.csv_rows())
    if res.best is None:
        print("no non-torsion element found", file=sys.stderr)
    else:
        print(f"min positive hhat: [{res.best.hhat_lo}, {res.best.hhat_hi}] "
              f"at {res.best.minpoly}", file=sys.stderr)


if __name__ == "__main__":
    main()
