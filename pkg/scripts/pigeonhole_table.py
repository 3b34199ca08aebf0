#!/usr/bin/env python3
"""Tabulate pigeonhole pairs over all subgroups of small index in (A/m^e)^x."""
import argparse

from drinfeld_heights.field_arith.parse import parse_poly
from drinfeld_heights.paperlab import UnitGroup, pigeonhole_check, subgroups_of_unit_group


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--m", default="T")
    ap.add_argument("--e", type=int, nargs="+", default=[4, 5, 6])
    ap.add_argument("--B", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args()

    m = parse_poly(args.m, args.q)
    print("e\tB\tindex\tsubgroups\tmax deg(b-a)")
    for e in args.e:
        G = UnitGroup(args.q, m, e)
        for B in args.B:
            subs = subgroups_of_unit_group(G, B)
            if args.q ** e < 2 * args.q ** 2 * B:
                print(f"{e}\t{B}\t-\t{len(subs)}\tprecondition q^e >= 2NB fails")
                continue
            by_index = {}
            for H in subs:
                r = pigeonhole_check(G, H, B)
                assert r.passed
                k = by_index.setdefault(H.index, [0, 0])
                k[0] += 1
                k[1] = max(k[1], r.witnesses["deg(b-a)"])
            for idx, (n, g) in sorted(by_index.items()):
                print(f"{e}\t{B}\t{idx}\t{n}\t{g}")


if __name__ == "__main__":
    main()
