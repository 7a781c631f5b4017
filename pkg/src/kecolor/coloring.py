"""Partial proper edge colorings and static edge colorers.

Colors are the integers ``1..palette_size``; an uncolored edge is simply
absent from :attr:`PartialColoring.assignment` and reads back as ``None``.
"""

from __future__ import annotations

from typing import Iterable

from .graph import ContractError, DynamicGraph, Edge, bipartition, edge


class ColoringError(RuntimeError):
    """A static colorer could not produce the requested coloring."""


class PartialColoring:
    """Edge -> color map with per-vertex indexes of the colors in use.

    ``at[v]`` maps each color used at ``v`` to the neighbor reached through
    the edge of that color, so freeness tests are dictionary lookups.
    """

    def __init__(self, n: int, palette_size: int):
        if palette_size < 0:
            raise ContractError("palette size must be non-negative")
        self.n = n
        self.palette_size = palette_size
        self.assignment: dict[Edge, int] = {}
        self.at: list[dict[int, int]] = [{} for _ in range(n)]
        self.counts = [0] * (palette_size + 1)
        # edges whose color changed since the last drain_touched()
        self.touched: set[Edge] = set()

    @property
    def p(self) -> int:
        """Number of colored edges."""
        return len(self.assignment)

    def color(self, e: Edge) -> int | None:
        return self.assignment.get(e)

    def is_free(self, v: int, c: int) -> bool:
        return c not in self.at[v]

    def used_colors(self, v: int) -> set[int]:
        return set(self.at[v])

    def colored_degree(self, v: int) -> int:
        return len(self.at[v])

    def assign(self, e: Edge, c: int) -> None:
        u, v = e
        if e in self.assignment:
            raise ContractError(f"edge {e} is already colored")
        if not 1 <= c <= self.palette_size:
            raise ContractError(f"color {c} outside palette [1, {self.palette_size}]")
        if c in self.at[u] or c in self.at[v]:
            raise ContractError(f"color {c} is not free at both endpoints of {e}")
        self.assignment[e] = c
        self.at[u][c] = v
        self.at[v][c] = u
        self.counts[c] += 1
        self.touched.add(e)

    def unassign(self, e: Edge) -> int | None:
        c = self.assignment.pop(e, None)
        if c is None:
            return None
        u, v = e
        del self.at[u][c]
        del self.at[v][c]
        self.counts[c] -= 1
        self.touched.add(e)
        return c

    def common_free_color(self, u: int, v: int, stats: dict | None = None) -> int | None:
        """Smallest color free at both ``u`` and ``v``, or None.

        Colors used at ``u`` are skipped; every remaining candidate is tested
        at ``v``.  When ``stats`` is given, ``examined`` receives the number
        of candidates tested at ``v`` and ``steps`` the total scan length.
        """
        at_u, at_v = self.at[u], self.at[v]
        examined = steps = 0
        found = None
        for c in range(1, self.palette_size + 1):
            steps += 1
            if c in at_u:
                continue
            examined += 1
            if c not in at_v:
                found = c
                break
        if stats is not None:
            stats["examined"] = examined
            stats["steps"] = steps
        return found

    def edges_with_color(self, c: int) -> list[Edge]:
        return [e for e, col in self.assignment.items() if col == c]

    def drain_touched(self) -> set[Edge]:
        t, self.touched = self.touched, set()
        return t

    def copy(self) -> "PartialColoring":
        f = PartialColoring(self.n, self.palette_size)
        f.assignment = dict(self.assignment)
        f.at = [dict(d) for d in self.at]
        f.counts = list(self.counts)
        return f

    def __repr__(self) -> str:
        return f"PartialColoring(palette={self.palette_size}, p={self.p})"


def coloring_from_assignment(n: int, palette_size: int, assignment: dict[Edge, int]) -> PartialColoring:
    f = PartialColoring(n, palette_size)
    for e, c in sorted(assignment.items()):
        f.assign(e, c)
    return f


def verify_proper(f: PartialColoring, g: DynamicGraph | None = None) -> bool:
    """Check properness of ``f`` from its assignment alone, plus agreement of
    the per-vertex indexes.  With ``g``, every colored edge must be present."""
    seen: dict[tuple[int, int], Edge] = {}
    counts = [0] * (f.palette_size + 1)
    for e, c in f.assignment.items():
        if not 1 <= c <= f.palette_size:
            return False
        if g is not None and e not in g:
            return False
        for x in e:
            if (x, c) in seen:
                return False
            seen[(x, c)] = e
        counts[c] += 1
    if counts != f.counts:
        return False
    for v in range(f.n):
        for c, w in f.at[v].items():
            if seen.get((v, c)) != edge(v, w):
                return False
    return len(seen) == sum(len(d) for d in f.at)


def greedy_total_color(g: DynamicGraph, palette: int, rng=None) -> PartialColoring:
    """Totally color ``g`` with ``palette`` colors.

    Without ``rng`` each edge takes its smallest common free color
    (first-fit, always succeeds when ``palette >= 2*Delta - 1``).  With a
    numpy ``Generator`` colors are drawn uniformly until one is free at both
    endpoints; with ``palette >= 3*Delta`` each draw succeeds with
    probability above 1/3.
    """
    f = PartialColoring(g.n, palette)
    for e in g.edges():
        u, v = e
        c = None
        if rng is not None and len(f.at[u]) + len(f.at[v]) < palette:
            while True:
                c = int(rng.integers(1, palette + 1))
                if c not in f.at[u] and c not in f.at[v]:
                    break
        else:
            c = f.common_free_color(u, v)
        if c is None:
            raise ColoringError(f"no free color for {e} with palette {palette}")
        f.assign(e, c)
    return f


def vizing_color(g: DynamicGraph) -> PartialColoring:
    """Total proper coloring of a simple graph with ``Delta + 1`` colors.

    Misra-Gries: for each uncolored edge ``(x, f)`` build a maximal fan at
    ``x``, invert the cd-path out of ``x``, then rotate a prefix of the fan.
    """
    n = g.n
    palette = g.max_degree() + 1
    at: list[dict[int, int]] = [{} for _ in range(n)]
    col: dict[Edge, int] = {}

    def free(v: int) -> int:
        d = at[v]
        c = 1
        while c in d:
            c += 1
        return c

    def put(a: int, b: int, c: int) -> None:
        at[a][c] = b
        at[b][c] = a
        col[edge(a, b)] = c

    def take(a: int, b: int) -> int:
        c = col.pop(edge(a, b))
        del at[a][c]
        del at[b][c]
        return c

    for x, y0 in g.edges():
        fan = [y0]
        in_fan = {y0}
        while True:
            last = at[fan[-1]]
            nxt = None
            for c, y in sorted(at[x].items()):
                if y not in in_fan and c not in last:
                    nxt = y
                    break
            if nxt is None:
                break
            fan.append(nxt)
            in_fan.add(nxt)

        c = free(x)
        d = free(fan[-1])
        if c != d:
            path = []
            v, want = x, d
            while want in at[v]:
                w = at[v][want]
                path.append((v, w, want))
                v, want = w, (c if want == d else d)
            for a, b, _ in path:
                take(a, b)
            for a, b, cc in path:
                put(a, b, c if cc == d else d)

        # first fan vertex with d free such that the prefix is still a fan
        w = None
        for i, y in enumerate(fan):
            if i > 0 and col.get(edge(x, y)) in at[fan[i - 1]]:
                break
            if d not in at[y]:
                w = i
                break
        if w is None:
            raise ColoringError(f"Misra-Gries found no rotation point for {(x, y0)}")
        shifted = [col[edge(x, fan[i + 1])] for i in range(w)]
        for i in range(1, w + 1):
            take(x, fan[i])
        for i in range(w):
            put(x, fan[i], shifted[i])
        put(x, fan[w], d)

    return coloring_from_assignment(n, palette, col)


def bipartite_color(g: DynamicGraph, sides: list[int] | None = None) -> PartialColoring:
    """Total proper coloring of a bipartite graph with ``Delta`` colors.

    ``sides`` gives the 0/1 side of every vertex; it is computed when
    omitted.  Each edge ``(u, v)`` gets a color ``a`` free at ``u``; if ``a``
    is busy at ``v`` the a/b alternating path leaving ``v`` is swapped first,
    where ``b`` is free at ``v``.  That path never reaches ``u``.
    """
    if sides is None:
        sides = bipartition(g)
        if sides is None:
            raise ColoringError("graph is not bipartite")
    for u, v in g.edges():
        if sides[u] == sides[v]:
            raise ColoringError(f"edge {(u, v)} does not cross the bipartition")
    palette = g.max_degree()
    at: list[dict[int, int]] = [{} for _ in range(g.n)]
    col: dict[Edge, int] = {}

    def free(v: int) -> int:
        c = 1
        while c in at[v]:
            c += 1
        return c

    for u, v in g.edges():
        a, b = free(u), free(v)
        if a in at[v]:
            path = []
            x, want = v, a
            while want in at[x]:
                y = at[x][want]
                path.append((x, y, want))
                x, want = y, (b if want == a else a)
            if x == u:
                raise ColoringError("alternating path closed an odd cycle")
            for x, y, cc in path:
                del at[x][cc]
                del at[y][cc]
            for x, y, cc in path:
                nc = b if cc == a else a
                at[x][nc] = y
                at[y][nc] = x
                col[edge(x, y)] = nc
        at[u][a] = v
        at[v][a] = u
        col[(u, v)] = a

    return coloring_from_assignment(g.n, palette, col)


def discard_least_used(f: PartialColoring, k: int) -> PartialColoring:
    """Keep the ``k`` most used colors of ``f`` and renumber them into [k].

    The ``palette_size - k`` colors with the fewest edges are dropped; ties
    drop the higher color first.  Kept colors retain their relative order.
    """
    if k < 1:
        raise ContractError("k must be positive")
    ell = f.palette_size - k
    palette = list(range(1, f.palette_size + 1))
    if ell <= 0:
        kept = palette
    else:
        dropped = set(sorted(palette, key=lambda c: (f.counts[c], -c))[:ell])
        kept = [c for c in palette if c not in dropped]
    renumber = {c: i for i, c in enumerate(kept, start=1)}
    out = PartialColoring(f.n, k)
    for e, c in f.assignment.items():
        nc = renumber.get(c)
        if nc is not None:
            out.assign(e, nc)
    return out


def color_edges(n: int, edges: Iterable[Edge], method: str = "vizing") -> PartialColoring:
    g = DynamicGraph.from_edges(n, edges)
    if method == "vizing":
        return vizing_color(g)
    if method == "bipartite":
        return bipartite_color(g)
    raise ValueError(f"unknown coloring method {method!r}")
