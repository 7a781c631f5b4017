"""Exhaustive ground truth on tiny graphs.

Each oracle refuses instances above its edge limit rather than returning a
number it cannot certify.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import DynamicGraph, Edge


class OracleRefused(ValueError):
    """Instance too large for exhaustive search."""


@dataclass
class OracleResult:
    p_star: int
    s_star: int
    frac_opt: Fraction | None
    coloring: dict[Edge, int] | None = None
    matching: set[Edge] | None = None


def _edges_by_degree_sum(g: DynamicGraph) -> list[Edge]:
    return sorted(g.edges(), key=lambda e: (-(len(g.adj[e[0]]) + len(g.adj[e[1]])), e))


def _check_size(g: DynamicGraph, limit: int, name: str) -> None:
    if g.m > limit:
        raise OracleRefused(f"{name}: {g.m} edges exceeds the limit of {limit}")


def brute_k_edge_coloring(g: DynamicGraph, k: int, max_edges: int = 14) -> tuple[int, dict[Edge, int]]:
    """Maximum number of edges properly colorable with ``k`` colors.

    Branch and bound over colors ``1..k`` or uncolored per edge.  Colors are
    interchangeable, so an edge may only open the next unused color.  The
    bound adds, to the colored count, half the remaining color capacity
    summed over vertices.
    """
    _check_size(g, max_edges, "brute_k_edge_coloring")
    edges = _edges_by_degree_sum(g)
    m = len(edges)
    n = g.n
    used = [set() for _ in range(n)]
    # remaining uncolored-and-undecided edges at each vertex
    rest = [0] * n
    for u, v in edges:
        rest[u] += 1
        rest[v] += 1
    assignment: dict[Edge, int] = {}
    best = [-1, {}]

    def bound() -> int:
        cap = 0
        for v in range(n):
            cap += min(rest[v], k - len(used[v]))
        return cap // 2

    def search(i: int, colored: int, opened: int) -> None:
        if colored + bound() <= best[0]:
            return
        if i == m:
            best[0] = colored
            best[1] = dict(assignment)
            return
        u, v = edges[i]
        rest[u] -= 1
        rest[v] -= 1
        for c in range(1, min(k, opened + 1) + 1):
            if c in used[u] or c in used[v]:
                continue
            used[u].add(c)
            used[v].add(c)
            assignment[(u, v)] = c
            search(i + 1, colored + 1, max(opened, c))
            del assignment[(u, v)]
            used[u].discard(c)
            used[v].discard(c)
        search(i + 1, colored, opened)
        rest[u] += 1
        rest[v] += 1

    search(0, 0, 0)
    return best[0], best[1]


def brute_k_matching(g: DynamicGraph, b: int | Sequence[int], max_edges: int = 16) -> tuple[int, set[Edge]]:
    """Maximum b-matching by include/exclude search with degree pruning.
    An integer ``b`` means ``b_v = b`` for every vertex."""
    _check_size(g, max_edges, "brute_k_matching")
    cap = [b] * g.n if isinstance(b, int) else list(b)
    edges = _edges_by_degree_sum(g)
    m = len(edges)
    chosen: list[Edge] = []
    best = [-1, set()]

    def search(i: int) -> None:
        if len(chosen) + (m - i) <= best[0]:
            return
        if i == m:
            best[0] = len(chosen)
            best[1] = set(chosen)
            return
        u, v = edges[i]
        if cap[u] > 0 and cap[v] > 0:
            cap[u] -= 1
            cap[v] -= 1
            chosen.append((u, v))
            search(i + 1)
            chosen.pop()
            cap[u] += 1
            cap[v] += 1
        search(i + 1)

    search(0)
    return best[0], best[1]


def brute_fractional(g: DynamicGraph, b: int | Sequence[int], max_edges: int = 10) -> Fraction:
    """Fractional b-matching optimum, enumerating ``2 x_e`` in {0, 1, 2}.

    Exhaustive over half-integral vectors; the polytope's vertices are
    half-integral, so the maximum over these vectors is the LP optimum.
    """
    _check_size(g, max_edges, "brute_fractional")
    cap = [2 * b] * g.n if isinstance(b, int) else [2 * c for c in b]
    edges = sorted(g.edges())
    m = len(edges)
    best = [-1]

    def search(i: int, total: int) -> None:
        if total + 2 * (m - i) <= best[0]:
            return
        if i == m:
            best[0] = total
            return
        u, v = edges[i]
        for t in (2, 1, 0):
            if cap[u] >= t and cap[v] >= t:
                cap[u] -= t
                cap[v] -= t
                search(i + 1, total + t)
                cap[u] += t
                cap[v] += t

    search(0, 0)
    return Fraction(best[0], 2)


def solve_all(g: DynamicGraph, k: int, coloring_limit: int = 14) -> OracleResult:
    p, f = brute_k_edge_coloring(g, k, max_edges=coloring_limit)
    s, mset = brute_k_matching(g, k, max_edges=max(16, coloring_limit))
    frac = brute_fractional(g, k) if g.m <= 10 else None
    return OracleResult(p, s, frac, f, mset)
