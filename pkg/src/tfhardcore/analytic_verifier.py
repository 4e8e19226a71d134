"""Grid certification of the lower-bound rate ``f_lambda``.

Three properties make ``f_lambda`` usable in the vertex-deletion induction:
it is non-increasing, convex, and satisfies

    exp(-x f'(x) - f(x)) + lam * exp((x - x^2) f'(x) - (x + 1) f(x)) >= 1.

Each is reduced to the sign of an explicit expression (``m``, ``k`` and
``r`` below, or the left-hand side itself in "direct" mode) and checked on a
grid. Every claim has a double or triple root, so margins are compared to a
relative tolerance: a point passes when ``value / (1 + scale) >= -TOL``,
where ``scale`` is the sum of absolute values of the expression's terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .special_functions import (
    c_lambda,
    f_lambda,
    f_lambda_prime,
    lambert_w,
)

TOL = 1e-9
_EPS = float(np.finfo(float).eps)
FD_REL_TOL = 1e-6
FD2_REL_TOL = 1e-5
HYPOTHESIS_FD_REL_TOL = 1e-5

CLAIMS = ("monotone", "convex", "inequality-direct", "inequality-r")


class DerivativeMismatch(AssertionError):
    """A closed-form derivative disagrees with its finite-difference estimate."""


@dataclass(frozen=True)
class LemmaCheckReport:
    lam: float
    claim: str
    grid_spec: str
    worst_margin: float
    worst_x: float
    passed: bool
    tolerance: float = TOL
    parts: tuple = field(default=(), compare=False)

    def to_tsv(self) -> str:
        return f"{self.lam:.12g}\t{self.claim}\t{self.worst_x:.12g}\t{self.worst_margin:.12g}\t{self.passed}"


TSV_HEADER = "lambda\tclaim\tworst_x\tworst_margin\tpassed"


def default_grid(lam: float) -> list[float]:
    """Log grid on [1e-6, 1e8], linear grid on [0, 10], and the critical points for ``lam``.

    The critical points are x = 2 (double root of the direct inequality),
    ``W(2 lam) / lam`` (double root of ``r``) and ``2 e^{2 lam}`` (image of 2
    under the ``x -> x e^{lam x}`` substitution).
    """
    pts = set(np.logspace(-6, 8, 2000).tolist())
    pts.update(np.linspace(0.0, 10.0, 200).tolist())
    pts.add(2.0)
    if lam > 0:
        pts.add(lambert_w(2 * lam) / lam)
        pts.add(2.0 * math.exp(2.0 * lam))
    return sorted(pts)


def _describe(grid: Sequence[float]) -> str:
    return f"{len(grid)} pts on [{min(grid):.3g}, {max(grid):.3g}]"


def _reduce(lam, claim, grid, margins_scales, xs=None) -> LemmaCheckReport:
    xs = grid if xs is None else xs
    worst, worst_x = math.inf, math.nan
    for x, (value, scale) in zip(xs, margins_scales):
        normalized = value / (1.0 + scale)
        if normalized < worst:
            worst, worst_x = normalized, x
    return LemmaCheckReport(
        lam=float(lam),
        claim=claim,
        grid_spec=_describe(grid),
        worst_margin=worst,
        worst_x=worst_x,
        passed=worst >= -TOL,
    )


def _fd_samples(grid: Sequence[float], k: int, lo: float, hi: float, avoid: float = 2.0) -> list[float]:
    candidates = [x for x in grid if lo <= x <= hi and abs(x - avoid) > 0.05]
    if len(candidates) <= k:
        return candidates
    idx = np.linspace(0, len(candidates) - 1, k).round().astype(int)
    return [candidates[i] for i in idx]


def richardson_derivative(fn: Callable[[float], float], x: float, h: float, order: int = 1) -> float:
    """Central difference of order 1 or 2, Richardson-extrapolated from steps h and h/2."""
    def central(step):
        if order == 1:
            return (fn(x + step) - fn(x - step)) / (2 * step)
        return (fn(x + step) - 2 * fn(x) + fn(x - step)) / (step * step)

    return (4 * central(h / 2) - central(h)) / 3


def _fd_step(lam: float, x: float) -> float:
    # f varies on the scale of x, of 1/lam, and of the O(1) distance to the pole at 2
    return min(1e-2 * max(x, min(1.0, 1.0 / lam)), 0.5 * x)


def _fd_noise(value: float, h: float, order: int) -> float:
    # rounding floor of a Richardson difference built from values of size |value|
    return 64 * _EPS * abs(value) / h**order


def _f_rounding_scale(lam: float, x: float) -> float:
    # magnitude of the terms whose difference forms f_lambda's numerator, over |x - 2|
    w = lambert_w(lam * x)
    return (w + 0.5 * w * w + c_lambda(lam)) / abs(x - 2.0)


# -- the sign functions ----------------------------------------------------

def m_function(lam: float, x: float) -> tuple[float, float]:
    """``m(x) = c x - x W^2 / 2 - 2W``; ``f'(x) = m(x) / (x (x-2)^2)``. Returns (value, scale)."""
    c = c_lambda(lam)
    w = lambert_w(lam * x)
    terms = (c * x, -0.5 * x * w * w, -2.0 * w)
    return math.fsum(terms), sum(abs(t) for t in terms)


def k_function(lam: float, x: float) -> tuple[float, float]:
    """``k(x)``, the numerator of ``f''``; its sign must match the sign of ``x - 2``."""
    c = c_lambda(lam)
    w = lambert_w(lam * x)
    terms = (
        x * x * w**3,
        8 * x * w * w,
        -4 * w * w,
        4 * x * w,
        -2 * x * x * w * c,
        -2 * x * x * c,
    )
    return math.fsum(terms), sum(abs(t) for t in terms)


def r_function(lam: float, x: float) -> tuple[float, float]:
    """``r(x)`` in the substituted coordinate; ``r >= 0`` implies the inequality at ``x e^{lam x}``."""
    c = c_lambda(lam)
    lx = lam * x
    e = math.exp(lx)
    terms = (
        4 * lam,
        lam * (2 + lx) ** 2,
        lam * lx * x * e,
        -4 * e * c,
        -2 * lam * c,
    )
    return math.fsum(terms), sum(abs(t) for t in terms)


def inequality_lhs(rate: float, deriv: float, lam: float, x: float) -> tuple[float, float]:
    """Left-hand side minus 1 of the induction inequality, with its scale."""
    a = math.exp(-x * deriv - rate)
    b = lam * math.exp((x - x * x) * deriv - (x + 1) * rate)
    return math.fsum((a, b, -1.0)), a + b


def f_lambda_second(lam: float, x: float) -> float:
    """Closed-form ``f''(x) = k(x) / ((x-2)^3 x^2 (W + 1))``, valid away from 0 and 2."""
    k, _ = k_function(lam, x)
    w = lambert_w(lam * x)
    return k / ((x - 2) ** 3 * x * x * (w + 1))


# -- claims ----------------------------------------------------------------

def check_monotone(lam: float, grid: Sequence[float] | None = None) -> LemmaCheckReport:
    grid = default_grid(lam) if grid is None else list(grid)
    if lam > 0:
        for x in _fd_samples(grid, 20, 0.1, 1e6):
            h = _fd_step(lam, x)
            fd = richardson_derivative(lambda y: f_lambda(lam, y), x, h, order=1)
            exact = f_lambda_prime(lam, x)
            if abs(fd - exact) > FD_REL_TOL * abs(exact) + _fd_noise(_f_rounding_scale(lam, x), h, 1):
                raise DerivativeMismatch(f"f' at lam={lam}, x={x}: closed form {exact!r}, finite difference {fd!r}")
    values = [m_function(lam, x) for x in grid]
    return _reduce(lam, "monotone", grid, [(-v, s) for v, s in values])


def check_convex(lam: float, grid: Sequence[float] | None = None) -> LemmaCheckReport:
    grid = default_grid(lam) if grid is None else list(grid)
    if lam > 0:
        for x in _fd_samples(grid, 20, 0.1, 1e5):
            h = _fd_step(lam, x)
            fd = richardson_derivative(lambda y: f_lambda(lam, y), x, h, order=2)
            exact = f_lambda_second(lam, x)
            if abs(fd - exact) > FD2_REL_TOL * abs(exact) + _fd_noise(_f_rounding_scale(lam, x), h, 2):
                raise DerivativeMismatch(f"f'' at lam={lam}, x={x}: closed form {exact!r}, finite difference {fd!r}")
    margins = []
    for x in grid:
        k, scale = k_function(lam, x)
        t = x - 2.0
        margins.append((t * k, abs(t) * scale))
    return _reduce(lam, "convex", grid, margins)


def substituted_grid(lam: float, grid: Sequence[float]) -> list[float]:
    """Map raw points ``y`` to ``x`` with ``x e^{lam x} = y``, i.e. ``x = W(lam y) / lam``."""
    if lam == 0:
        return list(grid)
    return [lambert_w(lam * y) / lam for y in grid]


def check_inequality(lam: float, grid: Sequence[float] | None = None, mode: str = "direct") -> LemmaCheckReport:
    """Check the induction inequality for ``f_lambda``.

    ``mode="direct"`` evaluates the inequality at the raw grid points.
    ``mode="r"`` evaluates ``r`` at the substituted points ``W(lam y) / lam``
    of the same raw grid; the report's ``worst_x`` is then in the substituted
    coordinate.
    """
    grid = default_grid(lam) if grid is None else list(grid)
    if mode == "direct":
        margins = [inequality_lhs(f_lambda(lam, x), f_lambda_prime(lam, x), lam, x) for x in grid]
        return _reduce(lam, "inequality-direct", grid, margins)
    if mode in ("r", "r-function"):
        xs = substituted_grid(lam, grid)
        margins = [r_function(lam, x) for x in xs]
        return _reduce(lam, "inequality-r", xs, margins)
    raise ValueError(f"unknown mode {mode!r}; expected 'direct' or 'r'")


def check_all(lam: float, grid: Sequence[float] | None = None, r_mode: bool = True) -> list[LemmaCheckReport]:
    reports = [check_monotone(lam, grid), check_convex(lam, grid), check_inequality(lam, grid, "direct")]
    if r_mode:
        reports.append(check_inequality(lam, grid, "r"))
    return reports


def lemma_predicate(lam: float, grid: Sequence[float] | None = None) -> bool:
    """Monotone, convex and direct inequality all pass at ``lam``."""
    return all(rep.passed for rep in check_all(lam, grid, r_mode=False))


def estimate_lambda_max(grid: Sequence[float] | None = None, resolution: float = 0.01,
                        lo: float = 1.0, hi: float = 20.0) -> float:
    """Bisect for the largest ``lam`` at which :func:`lemma_predicate` still holds."""
    if resolution > 0.05:
        raise ValueError(f"resolution must be <= 0.05, got {resolution}")
    if not lemma_predicate(lo, grid):
        raise RuntimeError(f"predicate fails at lam={lo}; this contradicts the proven range and signals a bug")
    if lemma_predicate(hi, grid):
        raise RuntimeError(f"predicate still holds at lam={hi}; widen the bracket")
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if lemma_predicate(mid, grid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def crossover_residual(lam: float) -> float:
    """``log(1 + lam) - (W(2 lam)^2 + 2 W(2 lam)) / 4``: edgeless log Z per vertex minus the d = 0 lower rate."""
    w = lambert_w(2 * lam)
    return math.log1p(lam) - 0.25 * (w * w + 2 * w)


def edgeless_crossover(lo: float = 1.0, hi: float = 100.0, xtol: float = 1e-12) -> float:
    """Fugacity above which the d = 0 lower rate exceeds the edgeless graph's own log Z per vertex."""
    flo, fhi = crossover_residual(lo), crossover_residual(hi)
    if flo * fhi > 0:
        raise RuntimeError(f"no sign change of the crossover residual on [{lo}, {hi}]")
    while hi - lo > xtol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        fm = crossover_residual(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- generic candidates ----------------------------------------------------

def hypothesis_grid() -> list[float]:
    pts = set(np.logspace(-4, 6, 1000).tolist())
    pts.update(np.linspace(0.01, 10.0, 200).tolist())
    return sorted(pts)


def check_hypothesis(rate: Callable[[float], float], rate_deriv: Callable[[float], float], lam: float,
                     grid: Sequence[float] | None = None) -> LemmaCheckReport:
    """Check that a candidate rate is non-increasing, convex and satisfies the induction inequality.

    ``rate_deriv`` is first compared with a central difference of ``rate`` at
    20 sample points; a disagreement raises :class:`DerivativeMismatch`. The
    returned report has claim ``"hypothesis"`` and carries the three partial
    reports in ``parts``.
    """
    grid = hypothesis_grid() if grid is None else sorted(grid)
    eps = np.finfo(float).eps
    worst_fd = None
    for x in _fd_samples(grid, 20, 1e-3, 1e5, avoid=math.inf):
        h = 1e-5 * x
        fd = (rate(x + h) - rate(x - h)) / (2 * h)
        exact = rate_deriv(x)
        allowed = HYPOTHESIS_FD_REL_TOL * max(abs(exact), abs(fd)) + 10 * eps * (abs(rate(x)) + 1e-300) / h
        if abs(fd - exact) > allowed and (worst_fd is None or abs(fd - exact) > worst_fd[0]):
            worst_fd = (abs(fd - exact), x, exact, fd)
    if worst_fd is not None:
        _, x, exact, fd = worst_fd
        raise DerivativeMismatch(f"rate_deriv disagrees with finite differences; worst at x={x}: {exact!r} vs {fd!r}")

    rates = [rate(x) for x in grid]
    derivs = [rate_deriv(x) for x in grid]
    mono = _reduce(lam, "monotone", grid, [(-d, abs(d)) for d in derivs])

    round_floor = 8 * eps * max((abs(r) for r in rates), default=0.0)
    convex_margins = []
    for i in range(1, len(grid) - 1):
        s1 = (rates[i] - rates[i - 1]) / (grid[i] - grid[i - 1])
        s2 = (rates[i + 1] - rates[i]) / (grid[i + 1] - grid[i])
        noise = round_floor / min(grid[i] - grid[i - 1], grid[i + 1] - grid[i])
        diff = s2 - s1
        # treat differences inside the rounding floor as zero
        convex_margins.append((diff if diff < -noise else max(diff, 0.0), abs(s1) + abs(s2)))
    conv = _reduce(lam, "convex", grid, convex_margins, xs=grid[1:-1])

    ineq = _reduce(lam, "inequality-direct", grid,
                   [inequality_lhs(r, d, lam, x) for x, r, d in zip(grid, rates, derivs)])

    parts = (mono, conv, ineq)
    worst = min(parts, key=lambda rep: rep.worst_margin)
    return LemmaCheckReport(
        lam=float(lam),
        claim="hypothesis",
        grid_spec=_describe(grid),
        worst_margin=worst.worst_margin,
        worst_x=worst.worst_x,
        passed=all(p.passed for p in parts),
        parts=parts,
    )


def shearer_candidate(lam: float) -> tuple[Callable[[float], float], Callable[[float], float]]:
    """Rate ``d -> shearer_rate(d) * log lam`` and its derivative."""
    from .special_functions import shearer_rate, shearer_rate_prime

    scale = math.log(lam)
    return (lambda d: shearer_rate(d) * scale), (lambda d: shearer_rate_prime(d) * scale)
