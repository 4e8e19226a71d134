"""Exhaustive occupancy-conjecture scan over small triangle-free graphs."""

import argparse
from fractions import Fraction

from tfhardcore.cli import fmt
from tfhardcore.random_experiments import conjecture_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=7)
    # the occupancy bound is only claimed for 0 < lambda <= 1; K1 already fails near lambda = 4
    ap.add_argument("--lambdas", default="1/10,1/4,1/2,3/4,1")
    ap.add_argument("--top", type=int, default=20)
    args = ap.parse_args()

    lams = [Fraction(x) for x in args.lambdas.split(",")]
    report = conjecture_scan(args.n_max, lams, keep=args.top)
    print(f"# {report.graphs_scanned} graphs")
    # smallest slack per fugacity among the kept records
    for lam in lams:
        recs = [r for r in report.smallest if r.lam == lam]
        if recs:
            print(f"# lambda={lam}: smallest kept slack {fmt(recs[0].slack)} (n={recs[0].n})")
    for rec in report.smallest:
        print(f"{fmt(rec.slack)}\t{rec.lam}\t{rec.n}\t{list(rec.edges)}")


if __name__ == "__main__":
    main()
