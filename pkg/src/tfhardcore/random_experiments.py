"""Random-graph experiments, Glauber dynamics and exhaustive scans over small graphs.

Randomness comes from numpy's PCG64 generator. Replica ``r`` of an
experiment seeded with ``s`` draws from ``SeedSequence(s, spawn_key=(r,))``,
so any single replica can be re-run on its own.
"""

from __future__ import annotations

import csv
import heapq
import io
import math
import statistics
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .graph_core import (
    Graph,
    _bits,
    edge_pairs,
    enumerate_labeled_graphs,
    first_triangle,
    is_triangle_free,
)
from .ipoly_exact import (
    MAX_EXACT_N,
    as_fraction,
    independence_polynomial,
    log_z,
    log_z_excess,
    occupancy_fraction_exact,
)
from .special_functions import conjecture_rhs, f_lambda, upper_rate_phi

THEOREM_SLACK = 1e-9
DEFAULT_MAX_TRIES = 10_000


class RejectionLimitExceeded(RuntimeError):
    def __init__(self, tries: int, accepted: int = 0):
        self.tries = tries
        self.rejection_rate = 1.0 - accepted / tries if tries else 1.0
        super().__init__(f"no triangle-free sample in {tries} tries (empirical rejection rate {self.rejection_rate:.4f})")


class TheoremViolation(AssertionError):
    """A triangle-free graph with lam <= 1 fell below the proven lower bound; this is a bug."""


def replica_seed(seed: int, replica: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(replica,)).generate_state(1, np.uint64)[0])


def _rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.Generator(np.random.PCG64(seed_or_rng))


def sample_gnp(n: int, p: float, seed) -> Graph:
    """G(n, p): each pair in :func:`edge_pairs` order is an edge iff its uniform draw is below ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = _rng(seed)
    rows = [0] * n
    if n < 2:
        return Graph(n, tuple(rows))
    draws = rng.random(n * (n - 1) // 2)
    iu, ju = np.triu_indices(n, 1)
    hit = np.nonzero(draws < p)[0]
    for u, v in zip(iu[hit].tolist(), ju[hit].tolist()):
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


@dataclass(frozen=True)
class TriangleFreeInfo:
    mode: str
    tries: int = 1
    edges_removed: int = 0


def make_triangle_free(g: Graph, mode: str = "rejection", seed=None, max_tries: int = DEFAULT_MAX_TRIES,
                       resample: Callable[[int], Graph] | None = None) -> tuple[Graph, TriangleFreeInfo]:
    """Condition ``g`` to be triangle-free.

    ``"rejection"`` keeps ``g`` if it is triangle-free and otherwise calls
    ``resample(try_index)`` for fresh candidates, up to ``max_tries`` graphs
    in total. ``"triangle-deletion"`` repeatedly takes the lexicographically
    first triangle and deletes one of its three edges uniformly at random.
    """
    if mode == "rejection":
        candidate = g
        for tries in range(1, max_tries + 1):
            if is_triangle_free(candidate):
                return candidate, TriangleFreeInfo(mode, tries=tries)
            if tries == max_tries:
                break
            if resample is None:
                raise ValueError("rejection mode needs a resample callback")
            candidate = resample(tries)
        raise RejectionLimitExceeded(max_tries)
    if mode in ("deletion", "triangle-deletion"):
        rng = _rng(seed)
        rows = list(g.rows)
        removed = 0
        work = Graph(g.n, tuple(rows))
        while (tri := first_triangle(work)) is not None:
            a, b, c = tri
            u, v = ((a, b), (a, c), (b, c))[int(rng.integers(3))]
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            removed += 1
            work = Graph(g.n, tuple(rows))
        return work, TriangleFreeInfo("triangle-deletion", edges_removed=removed)
    raise ValueError(f"unknown mode {mode!r}")


def rejection_acceptance_rate(n: int, d: float, tries: int, seed: int) -> float:
    """Fraction of ``tries`` independent G(n, d/n) samples that are triangle-free."""
    rng = _rng(seed)
    hits = sum(is_triangle_free(sample_gnp(n, d / n, rng)) for _ in range(tries))
    return hits / tries


# -- sharpness experiment ---------------------------------------------------

@dataclass
class ExperimentConfig:
    n: int
    d: float
    lam: Fraction = Fraction(1)
    replicas: int = 1
    seed: int = 0
    tf_mode: str | None = None
    mcmc_steps: int = 0
    burn_in: int = 0
    max_tries: int = DEFAULT_MAX_TRIES

    def __post_init__(self):
        self.lam = as_fraction(self.lam)
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.d < 0:
            raise ValueError("d must be >= 0")
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        if self.lam < 0:
            raise ValueError("lambda must be nonnegative")
        if self.tf_mode is None:
            self.tf_mode = "rejection" if self.d <= 3 else "triangle-deletion"
        if self.tf_mode == "deletion":
            self.tf_mode = "triangle-deletion"
        if self.tf_mode not in ("rejection", "triangle-deletion"):
            raise ValueError(f"unknown tf_mode {self.tf_mode!r}")

    @classmethod
    def from_text(cls, text: str) -> ExperimentConfig:
        """Parse ``key = value`` lines; ``#`` starts a comment and unknown keys are errors."""
        known = {f.name: f for f in fields(cls)}
        aliases = {"lambda": "lam"}
        kwargs = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            key = aliases.get(key, key)
            if key not in known:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
            if key in ("n", "replicas", "seed", "mcmc_steps", "burn_in", "max_tries"):
                kwargs[key] = int(value)
            elif key == "d":
                kwargs[key] = float(value)
            elif key == "lam":
                kwargs[key] = Fraction(value)
            else:
                kwargs[key] = value
        for required in ("n", "d", "seed"):
            if required not in kwargs:
                raise ValueError(f"config is missing required key {required!r}")
        return cls(**kwargs)


@dataclass(frozen=True)
class ExperimentResult:
    replica: int
    replica_seed: int
    n: int
    realized_avg_degree: float
    triangles_removed: int
    log_z_per_vertex: float
    alpha_per_vertex: float
    occupancy_per_vertex: float
    tries: int = 1
    mcmc_occupancy_per_vertex: float | None = None


@dataclass(frozen=True)
class SharpnessSummary:
    lam: float
    n: int
    target_d: float
    tf_mode: str
    replicas: int
    log_z_min: float
    log_z_median: float
    log_z_max: float
    realized_d_median: float
    lower_at_median_d: float
    upper_at_target_d: float
    upper_at_median_d: float
    min_lower_slack: float
    mean_tries: float
    mcmc_max_abs_error: float | None = None


def upper_rate_phi_closure(lam: float, d: float) -> float:
    """:func:`upper_rate_phi` extended to ``d = 0`` by its right limit."""
    if d > 0:
        return upper_rate_phi(lam, d)
    if lam <= 1:
        return float(lam)
    return 1.0 + math.log(lam)


def _run_replica(cfg: ExperimentConfig, r: int) -> ExperimentResult:
    rseed = replica_seed(cfg.seed, r)
    rng = _rng(rseed)
    p = min(1.0, cfg.d / cfg.n)
    g = sample_gnp(cfg.n, p, rng)
    g, info = make_triangle_free(g, cfg.tf_mode, seed=rng, max_tries=cfg.max_tries,
                                 resample=lambda _try: sample_gnp(cfg.n, p, rng))
    poly = independence_polynomial(g)
    lam = cfg.lam
    lz = log_z(poly, lam) / g.n
    occ = float(occupancy_fraction_exact(poly, lam)) / g.n if lam > 0 else 0.0
    d_real = g.average_degree
    if lam <= 1:
        bound = f_lambda(float(lam), d_real)
        if lz < bound - THEOREM_SLACK:
            raise TheoremViolation(
                f"replica {r}: log Z/n = {lz!r} < lower rate {bound!r} at d = {d_real} (graph {g.edges()})")
    mcmc = None
    if cfg.mcmc_steps and lam > 0:
        est = glauber_occupancy(g, lam, steps=cfg.mcmc_steps, burn_in=cfg.burn_in, seed=rng)
        mcmc = est.mean
    return ExperimentResult(
        replica=r,
        replica_seed=rseed,
        n=g.n,
        realized_avg_degree=d_real,
        triangles_removed=info.edges_removed,
        log_z_per_vertex=lz,
        alpha_per_vertex=poly.degree / g.n,
        occupancy_per_vertex=occ,
        tries=info.tries,
        mcmc_occupancy_per_vertex=mcmc,
    )


def sharpness_experiment(cfg: ExperimentConfig) -> tuple[list[ExperimentResult], SharpnessSummary]:
    """Sample triangle-free G(n, d/n) graphs and compare exact ``log Z / n`` with both envelopes.

    Raises :class:`TheoremViolation` if a replica with ``lam <= 1`` lands
    below the lower rate at its realized degree.
    """
    if cfg.n > MAX_EXACT_N:
        raise ValueError(f"sharpness experiments need exact counting, n <= {MAX_EXACT_N}")
    results = [_run_replica(cfg, r) for r in range(cfg.replicas)]
    lam = float(cfg.lam)
    lzs = [res.log_z_per_vertex for res in results]
    d_med = statistics.median(res.realized_avg_degree for res in results)
    mcmc_errors = [abs(res.mcmc_occupancy_per_vertex - res.occupancy_per_vertex)
                   for res in results if res.mcmc_occupancy_per_vertex is not None]
    summary = SharpnessSummary(
        lam=lam,
        n=cfg.n,
        target_d=cfg.d,
        tf_mode=cfg.tf_mode,
        replicas=cfg.replicas,
        log_z_min=min(lzs),
        log_z_median=statistics.median(lzs),
        log_z_max=max(lzs),
        realized_d_median=d_med,
        lower_at_median_d=f_lambda(lam, d_med),
        upper_at_target_d=upper_rate_phi_closure(lam, cfg.d),
        upper_at_median_d=upper_rate_phi_closure(lam, d_med),
        min_lower_slack=min(res.log_z_per_vertex - f_lambda(lam, res.realized_avg_degree) for res in results),
        mean_tries=statistics.fmean(res.tries for res in results),
        mcmc_max_abs_error=max(mcmc_errors) if mcmc_errors else None,
    )
    return results, summary


CSV_COLUMNS = ("replica", "seed", "n", "realized_d", "triangles_removed",
               "log_z_per_vertex", "alpha_per_vertex", "occupancy_per_vertex")


def results_to_csv(results: Iterable[ExperimentResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for res in results:
        writer.writerow([res.replica, res.replica_seed, res.n, f"{res.realized_avg_degree:.12g}",
                         res.triangles_removed, f"{res.log_z_per_vertex:.12g}",
                         f"{res.alpha_per_vertex:.12g}", f"{res.occupancy_per_vertex:.12g}"])
    return buf.getvalue()


# -- Glauber dynamics -------------------------------------------------------

@dataclass(frozen=True)
class GlauberEstimate:
    mean: float
    stderr: float
    steps: int
    burn_in: int


def default_glauber_schedule(n: int) -> tuple[int, int]:
    """(burn_in, total steps) = 100 n log n and 100 n log n + 1000 n log n, with log n floored at 1."""
    scale = n * max(math.log(n), 1.0) if n else 1.0
    burn_in = math.ceil(100 * scale)
    return burn_in, burn_in + math.ceil(1000 * scale)


def glauber_occupancy(g: Graph, lam, steps: int | None = None, burn_in: int | None = None, seed=0,
                      batches: int = 30, debug: bool = False) -> GlauberEstimate:
    """Estimate occupancy per vertex by single-site heat-bath Glauber dynamics.

    Each step picks a uniform vertex; if none of its neighbours is occupied it
    becomes occupied with probability ``lam / (1 + lam)`` and vacant
    otherwise. The occupied count is averaged over the ``steps - burn_in``
    post-burn-in steps and the standard error comes from ``batches`` batch
    means. ``debug`` asserts after every step that the state is independent.
    """
    lam_f = float(lam)
    if lam_f <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if g.n == 0:
        raise ValueError("Glauber dynamics needs at least one vertex")
    default_burn, default_steps = default_glauber_schedule(g.n)
    burn_in = default_burn if burn_in is None else burn_in
    steps = default_steps if steps is None else steps
    if steps <= burn_in:
        raise ValueError(f"steps ({steps}) must exceed burn_in ({burn_in})")
    measured = steps - burn_in
    batches = max(1, min(batches, measured))
    rng = _rng(seed)
    p_occ = lam_f / (1.0 + lam_f)
    rows = g.rows
    n = g.n
    occ = 0
    count = 0
    batch_len = measured // batches
    batch_sums = [0] * batches
    chunk = 1 << 16
    step = 0
    while step < steps:
        size = min(chunk, steps - step)
        verts = rng.integers(0, n, size).tolist()
        coins = (rng.random(size) < p_occ).tolist()
        for v, heads in zip(verts, coins):
            bit = 1 << v
            if not rows[v] & occ:
                if heads:
                    if not occ & bit:
                        occ |= bit
                        count += 1
                elif occ & bit:
                    occ &= ~bit
                    count -= 1
            if debug:
                assert all(not (rows[u] & occ) for u in _bits(occ)), f"non-independent state at step {step}"
            if step >= burn_in:
                b = (step - burn_in) // batch_len if batch_len else 0
                if b < batches:
                    batch_sums[b] += count
            step += 1
    means = [s / batch_len / n for s in batch_sums] if batch_len else [count / n]
    mean = statistics.fmean(means)
    stderr = statistics.stdev(means) / math.sqrt(len(means)) if len(means) > 1 else math.inf
    return GlauberEstimate(mean=mean, stderr=stderr, steps=steps, burn_in=burn_in)


# -- exhaustive scans -------------------------------------------------------

def triangle_free_graphs_up_to(n_max: int, n_min: int = 1) -> Iterable[Graph]:
    for n in range(n_min, n_max + 1):
        yield from enumerate_labeled_graphs(n, triangle_free=True)


@dataclass(frozen=True, order=True)
class SlackRecord:
    slack: float
    lam: Fraction = field(compare=False)
    n: int = field(compare=False)
    edges: tuple[tuple[int, int], ...] = field(compare=False)


@dataclass
class ConjectureScanReport:
    n_max: int
    lambdas: tuple[Fraction, ...]
    graphs_scanned: int
    smallest: list[SlackRecord]

    @property
    def min_slack(self) -> SlackRecord:
        return self.smallest[0]


def occupancy_slack(poly, n: int, m: int, lam: Fraction) -> float:
    """Exact occupancy minus ``n * conjecture_rhs(lam, d)``."""
    d = 2 * m / n
    return float(occupancy_fraction_exact(poly, lam)) - n * conjecture_rhs(float(lam), d)


def conjecture_scan(n_max: int, lambdas: Sequence, keep: int = 100) -> ConjectureScanReport:
    """Occupancy-conjecture slack over every labeled triangle-free graph with ``1 <= n <= n_max``.

    Keeps the ``keep`` smallest (graph, lam) slacks, smallest first. This
    gathers evidence only; a negative minimum is a finding, not an error.
    """
    if n_max > 7:
        raise ValueError(f"conjecture_scan supports n_max <= 7, got {n_max}")
    lams = tuple(as_fraction(x) for x in lambdas)
    if any(lam <= 0 for lam in lams):
        raise ValueError("all fugacities must be positive")
    heap: list[tuple[float, int, SlackRecord]] = []
    scanned = 0
    tiebreak = 0
    for g in triangle_free_graphs_up_to(n_max):
        scanned += 1
        poly = independence_polynomial(g)
        m = g.m
        for lam in lams:
            slack = occupancy_slack(poly, g.n, m, lam)
            tiebreak += 1
            # max-heap on slack via negation; earlier records win ties
            if len(heap) < keep:
                heapq.heappush(heap, (-slack, -tiebreak, SlackRecord(slack, lam, g.n, tuple(g.edges()))))
            elif -slack > heap[0][0]:
                heapq.heapreplace(heap, (-slack, -tiebreak, SlackRecord(slack, lam, g.n, tuple(g.edges()))))
    smallest = sorted((rec for _, _, rec in heap), key=lambda rec: rec.slack)
    return ConjectureScanReport(n_max=n_max, lambdas=lams, graphs_scanned=scanned, smallest=smallest)


@dataclass(frozen=True)
class TheoremScanReport:
    graphs_scanned: int
    min_slack: float
    argmin_edges: tuple[tuple[int, int], ...]
    argmin_n: int
    argmin_lam: Fraction


def theorem_bound_scan(n_max: int, lambdas: Sequence) -> TheoremScanReport:
    """Minimum of ``log Z(lam) - n f_lambda(lam, d)`` over labeled triangle-free graphs with ``n <= n_max``."""
    lams = tuple(as_fraction(x) for x in lambdas)
    best = (math.inf, (), 0, Fraction(0))
    scanned = 0
    for g in triangle_free_graphs_up_to(n_max):
        scanned += 1
        poly = independence_polynomial(g)
        d = g.average_degree
        for lam in lams:
            slack = log_z(poly, lam) - g.n * f_lambda(float(lam), d)
            if slack < best[0]:
                best = (slack, tuple(g.edges()), g.n, lam)
    return TheoremScanReport(scanned, *best)


# -- large-fugacity limit ---------------------------------------------------

@dataclass(frozen=True)
class LimitRow:
    lam: Fraction
    ratio: float
    gap: float


@dataclass
class LimitTable:
    alpha_per_vertex: float
    rows: list[LimitRow]

    @property
    def gaps_positive(self) -> bool:
        return all(row.gap > 0 for row in self.rows)

    @property
    def gaps_decreasing(self) -> bool:
        return all(b.gap < a.gap for a, b in zip(self.rows, self.rows[1:]))

    @property
    def ok(self) -> bool:
        return self.gaps_positive and self.gaps_decreasing


def limit_ratio_check(g: Graph, lambdas: Sequence) -> LimitTable:
    """``log Z(lam) / (n log lam)`` against ``alpha / n`` for increasing ``lam > 1``.

    The gap is computed as ``log(Z / lam^alpha) / (n log lam)`` so it does not
    lose digits to cancellation.
    """
    if g.n == 0:
        raise ValueError("the limit ratio is undefined for the empty graph")
    lams = [as_fraction(x) for x in lambdas]
    if any(lam <= 1 for lam in lams):
        raise ValueError("all fugacities must exceed 1")
    if any(b <= a for a, b in zip(lams, lams[1:])):
        raise ValueError("fugacities must be strictly increasing")
    poly = independence_polynomial(g)
    alpha_pv = poly.degree / g.n
    rows = []
    for lam in lams:
        scale = g.n * (math.log(lam.numerator) - math.log(lam.denominator))
        gap = log_z_excess(poly, lam) / scale
        rows.append(LimitRow(lam=lam, ratio=alpha_pv + gap, gap=gap))
    return LimitTable(alpha_per_vertex=alpha_pv, rows=rows)
