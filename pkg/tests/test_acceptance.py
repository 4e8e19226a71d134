"""Acceptance gate: twelve end-to-end criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``. Each criterion is a function returning
``(passed, detail)``; the pytest wrappers print the line and assert.
"""

import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import seeded_random_graphs  # noqa: E402

from tfhardcore import analytic_verifier as av  # noqa: E402
from tfhardcore.cli import plot_rows  # noqa: E402
from tfhardcore.graph_core import (  # noqa: E402
    cycle_graph,
    delete_closed_neighborhood,
    delete_vertex,
    enumerate_labeled_graphs,
    from_edge_list,
    petersen_graph,
)
from tfhardcore.ipoly_exact import (  # noqa: E402
    add,
    brute_force_polynomial,
    independence_polynomial,
    occupancy_fraction,
    shift,
)
from tfhardcore.random_experiments import (  # noqa: E402
    ExperimentConfig,
    TheoremViolation,
    conjecture_scan,
    glauber_occupancy,
    occupancy_slack,
    sharpness_experiment,
    theorem_bound_scan,
)
from tfhardcore.special_functions import (  # noqa: E402
    f_lambda,
    lambert_w,
    shearer_rate,
    upper_rate_phi,
)


def oracle_equivalence():
    mismatches = 0
    total = 0
    for g in enumerate_labeled_graphs(6):
        total += 1
        mismatches += independence_polynomial(g) != brute_force_polynomial(g)
    for g in seeded_random_graphs(200, 7, 18, seed=1):
        total += 1
        mismatches += independence_polynomial(g) != brute_force_polynomial(g)
    return mismatches == 0, f"{total} graphs, {mismatches} mismatches"


def recursion_identity():
    checked = bad = 0
    for g in seeded_random_graphs(500, 1, 12, seed=2):
        whole = list(independence_polynomial(g).coeffs)
        for v in range(g.n):
            out = independence_polynomial(delete_vertex(g, v))
            inside = independence_polynomial(delete_closed_neighborhood(g, v))
            checked += 1
            bad += add(out.coeffs, shift(inside)) != whole
    return bad == 0, f"{checked} (graph, vertex) pairs, {bad} failures"


def theorem_bound():
    report = theorem_bound_scan(7, [Fraction(1, 10), Fraction(1, 2), Fraction(1)])
    ok = report.min_slack >= -1e-9
    return ok, (f"{report.graphs_scanned} triangle-free graphs, min slack {report.min_slack:.6g} "
                f"at n={report.argmin_n} lambda={report.argmin_lam}")


def unit_interval_checks():
    failures = []
    worst = math.inf
    for i in range(21):
        lam = i / 20
        for rep in av.check_all(lam):
            worst = min(worst, rep.worst_margin)
            if not rep.passed:
                failures.append((lam, rep.claim))
    return not failures, f"21 lambdas x 4 claims, worst margin {worst:.3g}, failures {failures}"


def threshold():
    est = av.estimate_lambda_max(resolution=0.01)
    at_proven = av.lemma_predicate(2.61)
    ok = 11.0 <= est <= 12.2 and at_proven
    return ok, f"lambda_max estimate {est:.4f}, predicate at 2.61: {at_proven}"


def crossover():
    lam = av.edgeless_crossover()
    ok = abs(lam - 13.971) <= 1e-3
    return ok, f"crossover {lam:.9f}, residual {av.crossover_residual(lam):.2g}"


def shearer_recovery():
    passed = {lam: av.check_hypothesis(*av.shearer_candidate(lam), lam).passed for lam in (1.0, 10.0, 100.0)}
    worst = 0.0
    for x in np.linspace(0.05, 50, 1000):
        h = 1e-5 * max(x, 1.0)
        slope = (shearer_rate(x + h) - shearer_rate(x - h)) / (2 * h)
        worst = max(worst, abs(1 + (x - x * x) * slope - (x + 1) * shearer_rate(x)))
    ok = all(passed.values()) and worst <= 1e-8
    return ok, f"hypothesis {passed}, ODE residual {worst:.2g}"


def lambert_identities():
    inv = max(abs(lambert_w(x) * math.exp(lambert_w(x)) - x) / (1 + x) for x in np.logspace(-6, 9, 2000))
    comp = max(abs(lambert_w(x * math.exp(x)) - x) for x in np.linspace(0, 30, 3001))
    sandwich = max(abs(lambert_w(x) - (math.log(x) - math.log(math.log(x)))) / (math.log(math.log(x)) / math.log(x))
                   for x in np.logspace(4, 300, 1000))
    ok = inv <= 1e-13 and comp <= 1e-12 and sandwich <= 1.1
    return ok, f"inverse {inv:.2g}, composition {comp:.2g}, sandwich ratio {sandwich:.4f}"


def sharpness():
    cfg = ExperimentConfig(n=30, d=3, lam=1, replicas=50, seed=2026, tf_mode="rejection")
    try:
        results, summary = sharpness_experiment(cfg)
    except TheoremViolation as exc:
        return False, str(exc)
    below = sum(r.log_z_per_vertex < f_lambda(1.0, r.realized_avg_degree) - 1e-9 for r in results)
    cap = upper_rate_phi(1.0, 3.0) + 0.2
    ok = below == 0 and summary.log_z_median <= cap
    return ok, (f"median logZ/n {summary.log_z_median:.4f} vs cap {cap:.4f}, "
                f"min lower slack {summary.min_lower_slack:.4f}, replicas below bound {below}")


def mcmc():
    lines = []
    ok = True
    for name, g in (("C5", cycle_graph(5)), ("Petersen", petersen_graph())):
        exact = occupancy_fraction(independence_polynomial(g), 1) / g.n
        est = glauber_occupancy(g, 1, seed=2026)
        err = abs(est.mean - exact)
        ok &= err <= 3 * est.stderr and err <= 0.02
        lines.append(f"{name} {est.mean:.5f} vs {exact:.5f} (se {est.stderr:.2g})")
    return ok, "; ".join(lines)


def conjecture_evidence():
    report = conjecture_scan(7, [Fraction(1, 4), Fraction(1, 2), Fraction(1)], keep=100)
    worst = 0.0
    for rec in report.smallest:
        g = from_edge_list(rec.n, rec.edges)
        worst = max(worst, abs(rec.slack - occupancy_slack(brute_force_polynomial(g), g.n, g.m, rec.lam)))
    best = report.min_slack
    ok = len(report.smallest) == 100 and worst <= 1e-9
    return ok, (f"{report.graphs_scanned} graphs, recheck error {worst:.2g}; finding: min slack "
                f"{best.slack:.6g} at n={best.n} lambda={best.lam}")


def figure_data():
    rows = plot_rows(0.0, 100.0, 0.25, 1.0)
    order = all(lo <= up for d, lo, up in rows if d >= 0.5)
    in_range = all(0 <= lo <= 1 and 0 <= up <= 1 for _, lo, up in rows)
    decreasing = all(b[1] <= a[1] and b[2] <= a[2] for a, b in zip(rows, rows[1:]))
    seam = max(abs(f_lambda(1.0, 2 + s * t) - f_lambda(1.0, 2.0)) for s in (1, -1) for t in (1e-9, 1e-10))
    at_two = dict((d, lo) for d, lo, _ in rows)[2.0]
    at_hundred = rows[-1][2]
    ok = (order and in_range and decreasing and seam <= 1e-8
          and abs(at_two - 0.426303) <= 1e-6 and abs(at_hundred - 0.09117) <= 1e-5)
    return ok, (f"{len(rows)} rows, lower<=upper {order}, non-increasing {decreasing}, seam {seam:.2g}, "
                f"lower(2) {at_two:.6f}, upper(100) {at_hundred:.5f}")


CRITERIA = [
    ("1 oracle equivalence", oracle_equivalence),
    ("2 recursion identity", recursion_identity),
    ("3 lower bound on small triangle-free graphs", theorem_bound),
    ("4 grid checks on [0, 1]", unit_interval_checks),
    ("5 numeric threshold", threshold),
    ("6 edgeless crossover", crossover),
    ("7 Shearer recovery", shearer_recovery),
    ("8 Lambert W identities", lambert_identities),
    ("9 sharpness experiment", sharpness),
    ("10 Glauber occupancy", mcmc),
    ("11 occupancy conjecture scan", conjecture_evidence),
    ("12 envelope curves", figure_data),
]


def _run(name, fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, f"[{'PASS' if ok else 'FAIL'}] {name}: {detail} ({time.perf_counter() - start:.1f}s)"


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, line = _run(name, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_run(name, fn) for name, fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
