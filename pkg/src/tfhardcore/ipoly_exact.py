"""Exact independence polynomials and the quantities read off them.

Counting uses only Python ints. Evaluation at a fugacity ``lam`` is done in
exact rational arithmetic and converted to float at the very end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph_core import Graph, _bits, component_masks

MAX_EXACT_N = 64
MAX_BRUTE_FORCE_N = 24
DEFAULT_CACHE_ENTRIES = 1 << 20
CACHE_MIN_N = 33


@dataclass(frozen=True)
class IndependencePolynomial:
    """Coefficient ``k`` counts the independent sets of size ``k``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("an independence polynomial has constant term 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def total(self) -> int:
        """``i(G) = Z_G(1)``."""
        return sum(self.coeffs)

    def __call__(self, lam) -> Fraction:
        lam = as_fraction(lam)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc

    def derivative_at(self, lam) -> Fraction:
        lam = as_fraction(lam)
        acc = Fraction(0)
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * lam + k * self.coeffs[k]
        return acc

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coeffs)

    @classmethod
    def from_text(cls, text: str) -> IndependencePolynomial:
        return cls(tuple(int(t) for t in text.split()))


def as_fraction(lam) -> Fraction:
    """Exact rational from an int, Fraction, decimal/ratio string, or float.

    A float is taken at its exact binary value, so the rational error is the
    float's own rounding (relative <= 2**-53).
    """
    if isinstance(lam, Fraction):
        return lam
    if isinstance(lam, str):
        return Fraction(lam.strip())
    return Fraction(lam)


# -- polynomial helpers on plain lists ------------------------------------

def _padd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pshift_add(a: list[int], b: list[int]) -> list[int]:
    """``a + lam * b``."""
    out = list(a) + [0] * max(0, len(b) + 1 - len(a))
    for i, c in enumerate(b):
        out[i + 1] += c
    return out


class _Counter:
    def __init__(self, rows: tuple[int, ...], cache_entries: int | None):
        self.rows = rows
        self.cache: dict[int, list[int]] | None = {} if cache_entries else None
        self.cache_entries = cache_entries or 0

    def poly(self, mask: int) -> list[int]:
        comps = component_masks(self.rows, mask)
        out = [1]
        for comp in comps:
            out = _pmul(out, self.connected(comp))
        return out

    def connected(self, mask: int) -> list[int]:
        size = mask.bit_count()
        if size == 1:
            return [1, 1]
        if size == 2:
            return [1, 2]
        cache = self.cache
        if cache is not None:
            hit = cache.get(mask)
            if hit is not None:
                return hit
        rows = self.rows
        best_v, best_deg = -1, -1
        for v in _bits(mask):
            dv = (rows[v] & mask).bit_count()
            if dv > best_deg:
                best_v, best_deg = v, dv
        if best_deg == size - 1 and self._is_clique(mask):
            out = [1, size]
        else:
            out_branch = self.poly(mask & ~(1 << best_v))
            in_branch = self.poly(mask & ~(rows[best_v] | (1 << best_v)))
            out = _pshift_add(out_branch, in_branch)
        if cache is not None and len(cache) < self.cache_entries:
            cache[mask] = out
        return out

    def _is_clique(self, mask: int) -> bool:
        return all((self.rows[v] | (1 << v)) & mask == mask for v in _bits(mask))


def independence_polynomial(g: Graph, cache_entries: int | None = None) -> IndependencePolynomial:
    """Exact independence polynomial by the deletion recursion.

    Components are counted separately and multiplied. On a connected piece the
    pivot is a maximum-degree vertex (smallest index on ties) and the
    polynomial is ``Z(G - v) + lam * Z(G - N[v])``. ``cache_entries`` caps an
    optional memo keyed by induced vertex set; ``None`` enables it with the
    default cap only for ``n > 32`` and ``0`` disables it.
    """
    if g.n > MAX_EXACT_N:
        raise ValueError(f"exact counting supports n <= {MAX_EXACT_N}, got n = {g.n}")
    if cache_entries is None:
        cache_entries = DEFAULT_CACHE_ENTRIES if g.n >= CACHE_MIN_N else 0
    counter = _Counter(g.rows, cache_entries)
    coeffs = counter.poly((1 << g.n) - 1)
    return IndependencePolynomial(tuple(coeffs))


def brute_force_polynomial(g: Graph) -> IndependencePolynomial:
    """Tally every subset of ``V`` that contains no edge. Independent oracle, ``n <= 24``."""
    if g.n > MAX_BRUTE_FORCE_N:
        raise ValueError(f"brute force supports n <= {MAX_BRUTE_FORCE_N}, got n = {g.n}")
    counts = [0] * (g.n + 1)
    rows = g.rows
    for subset in range(1 << g.n):
        if all(not (rows[v] & subset) for v in _bits(subset)):
            counts[subset.bit_count()] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return IndependencePolynomial(tuple(counts))


def shift(p: IndependencePolynomial) -> list[int]:
    """Coefficients of ``lam * p``."""
    return [0, *p.coeffs]


def add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return _padd(list(a), list(b))


def multiply(a: IndependencePolynomial, b: IndependencePolynomial) -> IndependencePolynomial:
    return IndependencePolynomial(tuple(_pmul(list(a.coeffs), list(b.coeffs))))


def _log_fraction(z: Fraction) -> float:
    excess = z - 1
    if abs(excess) < 1:
        return math.log1p(float(excess))
    return math.log(z.numerator) - math.log(z.denominator)


def log_z(p: IndependencePolynomial, lam) -> float:
    """``log Z(lam)``, evaluated exactly and then taken to float."""
    lam = as_fraction(lam)
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    return _log_fraction(p(lam))


def log_z_excess(p: IndependencePolynomial, lam) -> float:
    """``log Z(lam) - alpha * log lam``, i.e. ``log(Z / lam^alpha)``, without cancellation."""
    lam = as_fraction(lam)
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return _log_fraction(p(lam) / lam ** p.degree)


def occupancy_fraction_exact(p: IndependencePolynomial, lam) -> Fraction:
    lam = as_fraction(lam)
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return lam * p.derivative_at(lam) / p(lam)


def occupancy_fraction(p: IndependencePolynomial, lam) -> float:
    """Expected size ``lam Z'(lam) / Z(lam)`` of the hard-core random independent set."""
    return float(occupancy_fraction_exact(p, lam))


def independence_number(p: IndependencePolynomial) -> int:
    return p.degree
