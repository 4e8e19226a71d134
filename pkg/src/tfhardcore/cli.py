"""Command-line entry point: ``tfhardcore <subcommand> ...``.

Every subcommand exits 0 iff its internal checks pass. Reals print with 12
significant digits; exact integers print in full.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys
from fractions import Fraction

from . import analytic_verifier as av
from .graph_core import GraphFormatError, enumerate_labeled_graphs, format_graph, is_triangle_free, read_graph
from .ipoly_exact import MAX_EXACT_N, independence_polynomial, log_z, occupancy_fraction
from .random_experiments import (
    ExperimentConfig,
    RejectionLimitExceeded,
    TheoremViolation,
    conjecture_scan,
    results_to_csv,
    sharpness_experiment,
    upper_rate_phi_closure,
)
from .special_functions import f_lambda


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(t) for t in text.split(",") if t.strip()]


def _out(path):
    # stdout must survive the with-block
    return contextlib.nullcontext(sys.stdout) if path in (None, "-") else open(path, "w")


# -- subcommands ------------------------------------------------------------

def cmd_count(args) -> int:
    g = read_graph(args.graph)
    if g.n > MAX_EXACT_N:
        print(f"error: exact counting supports n <= {MAX_EXACT_N}, got {g.n}", file=sys.stderr)
        return 2
    poly = independence_polynomial(g)
    lz = log_z(poly, args.lam) / g.n if g.n else 0.0
    parts = [f"i={poly.total()}", f"logZ/n={fmt(lz)}"]
    if args.alpha:
        parts.append(f"alpha={poly.degree}")
    if args.occupancy:
        occ = occupancy_fraction(poly, args.lam) if args.lam > 0 else 0.0
        parts.append(f"occupancy={fmt(occ)}")
        parts.append(f"occupancy/n={fmt(occ / g.n) if g.n else '0'}")
    print(", ".join(parts))
    if args.polynomial:
        print(poly.to_text())
    return 0


def cmd_bounds(args) -> int:
    g = read_graph(args.graph)
    if g.n == 0:
        print("error: bounds are per vertex and need n >= 1", file=sys.stderr)
        return 2
    poly = independence_polynomial(g)
    lam = float(args.lam)
    d = g.average_degree
    lz = log_z(poly, args.lam) / g.n
    lower = f_lambda(lam, d)
    upper = upper_rate_phi_closure(lam, d)
    tf = is_triangle_free(g)
    print("n\tm\td\ttriangle_free\tlog_z_per_vertex\tlower\tupper\tlower_slack\tupper_slack")
    print("\t".join([str(g.n), str(g.m), fmt(d), str(tf), fmt(lz), fmt(lower), fmt(upper),
                     fmt(lz - lower), fmt(upper - lz)]))
    if tf and args.lam <= 1 and lz < lower - 1e-9:
        print("error: log Z per vertex is below the proven lower rate", file=sys.stderr)
        return 1
    return 0


def _lambda_values(args) -> list[float]:
    if args.lambdas:
        return [float(x) for x in args.lambdas]
    count = int(round((args.lambda_max - args.lambda_min) / args.step))
    return [args.lambda_min + i * args.step for i in range(count + 1)]


def cmd_verify(args) -> int:
    failed = False
    with _out(args.output) as out:
        print(av.TSV_HEADER, file=out)
        for lam in _lambda_values(args):
            for rep in av.check_all(lam, r_mode=not args.no_r_mode):
                print(rep.to_tsv(), file=out)
                if not rep.passed and lam <= 1:
                    failed = True
    return 1 if failed else 0


def cmd_lambda_max(args) -> int:
    print(fmt(av.estimate_lambda_max(resolution=args.resolution)))
    return 0


def cmd_crossover(args) -> int:
    lam = av.edgeless_crossover()
    print(fmt(lam))
    return 0 if abs(av.crossover_residual(lam)) <= 1e-8 else 1


def cmd_experiment(args) -> int:
    with open(args.config) as fh:
        cfg = ExperimentConfig.from_text(fh.read())
    try:
        results, summary = sharpness_experiment(cfg)
    except TheoremViolation as exc:
        print(f"fatal: {exc}", file=sys.stderr)
        return 1
    except RejectionLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    with _out(args.output) as out:
        out.write(results_to_csv(results))
    print(f"# lambda={fmt(summary.lam)} n={summary.n} d={fmt(summary.target_d)} mode={summary.tf_mode}", file=sys.stderr)
    print(f"# logZ/n min={fmt(summary.log_z_min)} median={fmt(summary.log_z_median)} max={fmt(summary.log_z_max)}",
          file=sys.stderr)
    print(f"# lower(median d)={fmt(summary.lower_at_median_d)} upper(target d)={fmt(summary.upper_at_target_d)} "
          f"upper(median d)={fmt(summary.upper_at_median_d)} min lower slack={fmt(summary.min_lower_slack)}",
          file=sys.stderr)
    return 0


def cmd_conjecture(args) -> int:
    report = conjecture_scan(args.n_max, args.lambdas, keep=max(args.top, 1))
    best = report.min_slack
    print(f"# graphs={report.graphs_scanned} lambdas={','.join(str(x) for x in report.lambdas)} "
          f"min_slack={fmt(best.slack)} at lambda={best.lam} n={best.n} edges={list(best.edges)}")
    print("slack\tlambda\tn\tedges")
    for rec in report.smallest[: args.top]:
        edges = " ".join(f"{u}-{v}" for u, v in rec.edges)
        print(f"{fmt(rec.slack)}\t{rec.lam}\t{rec.n}\t{edges}")
    return 0


def plot_rows(d_min: float, d_max: float, step: float, lam: float) -> list[tuple[float, float, float]]:
    if not (0 <= d_min < d_max) or step <= 0:
        raise ValueError(f"need 0 <= d_min < d_max and step > 0, got ({d_min}, {d_max}, {step})")
    count = int(math.floor((d_max - d_min) / step + 1e-9))
    rows = []
    for i in range(count + 1):
        d = d_min + i * step
        rows.append((d, f_lambda(lam, d), upper_rate_phi_closure(lam, d)))
    return rows


def cmd_plotdata(args) -> int:
    try:
        rows = plot_rows(args.d_min, args.d_max, args.step, float(args.lam))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    with _out(args.output) as out:
        print("d lower upper", file=out)
        for d, lo, up in rows:
            print(f"{fmt(d)} {fmt(lo)} {fmt(up)}", file=out)
    return 0


def cmd_enumerate(args) -> int:
    count = 0
    for g in enumerate_labeled_graphs(args.n, triangle_free=args.triangle_free):
        count += 1
        if not args.count_only:
            sys.stdout.write(format_graph(g) + "\n")
    print(f"{count} graphs", file=sys.stderr if not args.count_only else sys.stdout)
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tfhardcore",
                                     description="Exact counting and bound checks for the hard-core model on triangle-free graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact independence polynomial of a graph file")
    p.add_argument("graph")
    p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(1))
    p.add_argument("--polynomial", action="store_true")
    p.add_argument("--occupancy", action="store_true")
    p.add_argument("--alpha", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bounds", help="log Z per vertex against the lower and upper rates")
    p.add_argument("graph")
    p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(1))
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="grid checks of monotonicity, convexity and the induction inequality")
    p.add_argument("--lambda-min", type=float, default=0.0)
    p.add_argument("--lambda-max", type=float, default=1.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--lambdas", type=_fraction_list, help="explicit comma-separated list; overrides the range")
    p.add_argument("--no-r-mode", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lambda-max", help="numeric threshold up to which the grid checks hold")
    p.add_argument("--resolution", type=float, default=0.01)
    p.set_defaults(func=cmd_lambda_max)

    p = sub.add_parser("crossover", help="fugacity where the d = 0 lower rate overtakes log(1 + lambda)")
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("experiment", help="triangle-free G(n, d/n) sharpness experiment from a config file")
    p.add_argument("config")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("conjecture", help="exhaustive occupancy-conjecture slack scan")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--lambdas", type=_fraction_list, default=[Fraction(1, 4), Fraction(1, 2), Fraction(1)])
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("plotdata", help="lower and upper curves as a 'd lower upper' table")
    p.add_argument("--d-min", type=float, default=0.0)
    p.add_argument("--d-max", type=float, default=100.0)
    p.add_argument("--step", type=float, default=0.25)
    p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(1))
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("enumerate", help="stream every labeled graph on n <= 7 vertices")
    p.add_argument("n", type=int)
    p.add_argument("--triangle-free", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
