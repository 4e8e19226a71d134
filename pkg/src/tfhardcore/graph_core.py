"""Immutable simple graphs on vertices ``0..n-1`` stored as adjacency bit rows.

Row ``v`` is a Python int whose bit ``u`` is set iff ``uv`` is an edge. Python
ints are arbitrary width, so the same representation serves every ``n``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_ENUMERATION_N = 7


class GraphFormatError(ValueError):
    """A graph file or edge list could not be turned into a simple graph."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise GraphFormatError(f"expected {self.n} rows, got {len(self.rows)}")

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def closed_neighborhood_mask(self, v: int) -> int:
        return self.rows[v] | (1 << v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def average_degree(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    def induced(self, keep: int) -> Graph:
        """Subgraph induced on the vertex mask ``keep``, relabelled in increasing order."""
        kept = list(_bits(keep))
        index = {v: i for i, v in enumerate(kept)}
        rows = []
        for v in kept:
            r = 0
            for u in _bits(self.rows[v] & keep):
                r |= 1 << index[u]
            rows.append(r)
        return Graph(len(kept), tuple(rows))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphFormatError(f"vertex count must be nonnegative, got {n}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph(offset, tuple(rows))


def count_triangles(g: Graph) -> int:
    total = 0
    for u in range(g.n):
        higher = g.rows[u] >> (u + 1) << (u + 1)
        for v in _bits(higher):
            total += (g.rows[v] & higher).bit_count()
    # each triangle u<v<w is counted once at (u, v) and once at (u, w)
    return total // 2


def is_triangle_free(g: Graph) -> bool:
    for u in range(g.n):
        row = g.rows[u]
        for v in _bits(row >> (u + 1) << (u + 1)):
            if row & g.rows[v]:
                return False
    return True


def first_triangle(g: Graph) -> tuple[int, int, int] | None:
    """Lexicographically smallest triangle ``(a, b, c)`` with ``a < b < c``, or None."""
    for a in range(g.n):
        above_a = g.rows[a] >> (a + 1) << (a + 1)
        for b in _bits(above_a):
            common = above_a & g.rows[b] & ~((1 << (b + 1)) - 1)
            if common:
                return a, b, (common & -common).bit_length() - 1
    return None


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for graph on {g.n} vertices")


def delete_vertex(g: Graph, v: int) -> Graph:
    """``G - v``; remaining vertices keep their relative order."""
    _check_vertex(g, v)
    return g.induced(((1 << g.n) - 1) & ~(1 << v))


def delete_closed_neighborhood(g: Graph, v: int) -> Graph:
    """``G - N[v]``."""
    _check_vertex(g, v)
    return g.induced(((1 << g.n) - 1) & ~g.closed_neighborhood_mask(v))


def component_masks(rows: tuple[int, ...] | list[int], mask: int) -> list[int]:
    """Vertex masks of the connected components of the subgraph induced on ``mask``."""
    comps = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            grown = 0
            for v in _bits(frontier):
                grown |= rows[v]
            grown &= remaining & ~comp
            comp |= grown
            frontier = grown
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(g: Graph) -> list[Graph]:
    return [g.induced(c) for c in component_masks(g.rows, (1 << g.n) - 1)]


def edge_pairs(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in the fixed order that defines edge-bit indices for enumeration."""
    return list(combinations(range(n), 2))


def enumerate_labeled_graphs(n: int, triangle_free: bool = False) -> Iterator[Graph]:
    """Every labeled simple graph on ``n <= 7`` vertices exactly once.

    Graphs are yielded in increasing order of their edge bitmask over
    :func:`edge_pairs`. With ``triangle_free`` the search prunes any partial
    edge set that already closes a triangle, so only triangle-free graphs are
    built.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > MAX_ENUMERATION_N:
        raise ValueError(f"enumeration is capped at n = {MAX_ENUMERATION_N}, got {n}")
    pairs = edge_pairs(n)
    if not triangle_free:
        for mask in range(1 << len(pairs)):
            rows = [0] * n
            for i in _bits(mask):
                u, v = pairs[i]
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            yield Graph(n, tuple(rows))
        return
    yield from _triangle_free_dfs(n, pairs)


def _triangle_free_dfs(n: int, pairs: list[tuple[int, int]]) -> Iterator[Graph]:
    # Deciding edge bits from the most significant index down keeps the output
    # in increasing bitmask order: "absent" is explored before "present".
    rows = [0] * n

    def rec(i: int) -> Iterator[Graph]:
        if i < 0:
            yield Graph(n, tuple(rows))
            return
        yield from rec(i - 1)
        u, v = pairs[i]
        if rows[u] & rows[v]:
            return
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        yield from rec(i - 1)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)

    yield from rec(len(pairs) - 1)


# Text format: "n m" then m lines "u v".

def format_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    tokens = text.split()
    if not tokens:
        # an empty file is the empty graph
        return empty_graph(0)
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphFormatError(f"non-integer token in graph text: {exc}") from None
    if len(nums) < 2:
        raise GraphFormatError("header must be 'n m'")
    n, m = nums[0], nums[1]
    body = nums[2:]
    if m < 0 or len(body) != 2 * m:
        raise GraphFormatError(f"header declares {m} edges but {len(body) / 2:g} were given")
    edges = list(zip(body[0::2], body[1::2]))
    return from_edge_list(n, edges)


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path_or_file) -> None:
    if isinstance(path_or_file, io.TextIOBase):
        path_or_file.write(format_graph(g))
        return
    with open(path_or_file, "w") as fh:
        fh.write(format_graph(g))
