"""Fractional b-matchings: half-integral optima and their rounding.

A :class:`FractionalAssignment` stores ``2 * x_e`` as an integer in
{0, 1, 2}, so loads and values are exact.  The optimum of the fractional
b-matching LP is obtained from an integral b-matching on the bipartite
double cover, and :func:`round_half_integral` turns any feasible
half-integral vector into an integral b-matching losing at most a
``1/(3*beta)`` fraction of its value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import ContractError, DynamicGraph, Edge, bipartition, edge


class FractionalAssignment:
    """Half-integral edge values with per-vertex loads, all doubled."""

    def __init__(self, n: int, twice_x: dict[Edge, int] | None = None):
        self.n = n
        self.twice_x: dict[Edge, int] = {}
        self.twice_load = [0] * n
        self.twice_value = 0
        for e, t in (twice_x or {}).items():
            self.set_twice(e, t)

    def twice(self, e: Edge) -> int:
        return self.twice_x.get(e, 0)

    def __getitem__(self, e: Edge) -> Fraction:
        return Fraction(self.twice_x.get(e, 0), 2)

    def set_twice(self, e: Edge, t: int) -> int:
        """Set ``x_e = t / 2``; return the previous doubled value."""
        if t not in (0, 1, 2):
            raise ContractError(f"x_{e} = {t}/2 is not half-integral in [0, 1]")
        old = self.twice_x.pop(e, 0)
        if t:
            self.twice_x[e] = t
        delta = t - old
        self.twice_load[e[0]] += delta
        self.twice_load[e[1]] += delta
        self.twice_value += delta
        return old

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def load(self, v: int) -> Fraction:
        return Fraction(self.twice_load[v], 2)

    def support(self) -> set[Edge]:
        return set(self.twice_x)

    def half_edges(self) -> list[Edge]:
        return sorted(e for e, t in self.twice_x.items() if t == 1)

    def is_integral(self) -> bool:
        return all(t == 2 for t in self.twice_x.values())

    def items(self):
        return self.twice_x.items()

    def copy(self) -> "FractionalAssignment":
        x = FractionalAssignment(self.n)
        x.twice_x = dict(self.twice_x)
        x.twice_load = list(self.twice_load)
        x.twice_value = self.twice_value
        return x

    def __eq__(self, other) -> bool:
        return isinstance(other, FractionalAssignment) and self.twice_x == other.twice_x

    def __repr__(self) -> str:
        return f"FractionalAssignment(n={self.n}, value={self.value}, support={len(self.twice_x)})"


def uniform_b(n: int, k: int) -> list[int]:
    return [k] * n


def beta(b: Sequence[int]) -> int:
    return min(b) if len(b) else 0


def verify_feasible(x: FractionalAssignment, b: Sequence[int], g: DynamicGraph | None = None) -> bool:
    loads = [0] * x.n
    for e, t in x.twice_x.items():
        if t not in (1, 2):
            return False
        if g is not None and e not in g:
            return False
        loads[e[0]] += t
        loads[e[1]] += t
    return loads == x.twice_load and all(loads[v] <= 2 * b[v] for e in x.twice_x for v in e)


def value(x: FractionalAssignment) -> Fraction:
    return x.value


def double_cover(g: DynamicGraph, b: Sequence[int]):
    """Bipartite double cover of ``g``.

    Vertex ``v`` has copies ``v' = v`` and ``v'' = v + n``; edge ``(j, l)``
    maps to ``(j', l'')`` and ``(j'', l')``.  Returns the cover, its capacity
    vector and the edge mapping.
    """
    n = g.n
    cover = DynamicGraph(2 * n)
    mapping: dict[Edge, tuple[Edge, Edge]] = {}
    for j, l in g.edges():
        e1 = edge(j, l + n)
        e2 = edge(l, j + n)
        cover.insert(*e1)
        cover.insert(*e2)
        mapping[(j, l)] = (e1, e2)
    return cover, list(b) + list(b), mapping


def _augment_bmatching(
    nbrs: list[list[int]], cap: Sequence[int], left: Iterable[int], chosen: set[Edge]
) -> set[Edge]:
    """Grow the b-matching ``chosen`` (pairs ``(left, right)``) of a bipartite
    graph along augmenting paths until none is left; the result is maximum.

    ``nbrs[a]`` lists the right neighbors of left vertex ``a``.  Each round
    runs one breadth-first search from every left vertex with spare capacity.
    """
    load = [0] * len(cap)
    mates: dict[int, list[int]] = {}
    for a, c in chosen:
        load[a] += 1
        load[c] += 1
        mates.setdefault(c, []).append(a)
    left = list(left)
    while True:
        sources = [a for a in left if load[a] < cap[a] and nbrs[a]]
        if not sources:
            return chosen
        parent_right: dict[int, int] = {}
        parent_left: dict[int, int] = {a: -1 for a in sources}
        frontier = sources
        end = -1
        while frontier and end < 0:
            nxt = []
            for a in frontier:
                for c in nbrs[a]:
                    if c in parent_right or (a, c) in chosen:
                        continue
                    parent_right[c] = a
                    if load[c] < cap[c]:
                        end = c
                        break
                    for a2 in mates.get(c, ()):
                        if a2 not in parent_left:
                            parent_left[a2] = c
                            nxt.append(a2)
                if end >= 0:
                    break
            frontier = nxt
        if end < 0:
            return chosen
        c = end
        load[c] += 1
        while True:
            a = parent_right[c]
            chosen.add((a, c))
            mates.setdefault(c, []).append(a)
            back = parent_left[a]
            if back < 0:
                load[a] += 1
                break
            chosen.discard((a, back))
            mates[back].remove(a)
            c = back


def max_bipartite_bmatching(
    g: DynamicGraph, b: Sequence[int], sides: Sequence[int] | None = None, warm: Iterable[Edge] = ()
) -> set[Edge]:
    """Maximum b-matching of a bipartite graph as a set of edges.

    Equivalent to a maximum flow with capacity ``b`` on source and sink arcs
    and unit capacity on graph edges; integral capacities give an integral
    optimum.  ``warm`` may hold a feasible b-matching to start from.
    """
    if sides is None:
        sides = bipartition(g)
        if sides is None:
            raise ContractError("graph is not bipartite")
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    left = []
    for u, adj in enumerate(g.adj):
        if adj and sides[u] == 0:
            for v in adj:
                if sides[v] == 0:
                    raise ContractError(f"edge {edge(u, v)} does not cross the bipartition")
            nbrs[u] = sorted(adj)
            left.append(u)
    chosen = {(u, v) if sides[u] == 0 else (v, u) for u, v in warm}
    chosen = _augment_bmatching(nbrs, b, left, chosen)
    return {edge(a, c) for a, c in chosen}


def half_integral_optimum(
    g: DynamicGraph, b: Sequence[int], warm: Iterable[Edge] = (), sides: Sequence[int] | None = None
) -> FractionalAssignment:
    """Optimal fractional b-matching of ``g`` with entries in {0, 1/2, 1}.

    Bipartite graphs are solved directly, giving an integral optimum.
    Otherwise an optimal b'-matching ``y`` of the double cover (see
    :func:`double_cover`) is projected back with ``x_e = (y_e' + y_e'') / 2``.
    ``warm`` is an optional feasible integral b-matching of ``g`` used as the
    starting point; it does not affect optimality.  ``sides`` may pass a
    known bipartition of ``g`` to skip the bipartiteness test.
    """
    if sides is None:
        sides = bipartition(g)
    if sides is not None:
        chosen = max_bipartite_bmatching(g, b, sides, warm)
        return FractionalAssignment(g.n, {e: 2 for e in chosen})
    n = g.n
    # left copies are 0..n-1, right copies n..2n-1
    nbrs: list[list[int]] = [[] for _ in range(2 * n)]
    left = []
    for j, adj in enumerate(g.adj):
        if adj:
            nbrs[j] = [l + n for l in sorted(adj)]
            left.append(j)
    start = set()
    for j, l in warm:
        start.add((j, l + n))
        start.add((l, j + n))
    y = _augment_bmatching(nbrs, list(b) + list(b), left, start)
    twice: dict[Edge, int] = {}
    for a, c in y:
        e = edge(a, c - n)
        twice[e] = twice.get(e, 0) + 1
    return FractionalAssignment(n, twice)


@dataclass
class EulerPartition:
    """Edge-disjoint walks given as vertex sequences.

    A trail ``[v0, ..., vL]`` has ``v0 != vL``; a circuit starts and ends at
    the same vertex.
    """

    trails: list[list[int]] = field(default_factory=list)
    circuits: list[list[int]] = field(default_factory=list)

    @staticmethod
    def walk_edges(walk: Sequence[int]) -> list[Edge]:
        return [edge(walk[i], walk[i + 1]) for i in range(len(walk) - 1)]

    def all_edges(self) -> list[Edge]:
        out = []
        for w in self.trails + self.circuits:
            out.extend(self.walk_edges(w))
        return out


def _adjacency(n: int, edges: Iterable[Edge]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _maximal_walk(adj: list[set[int]], start: int) -> list[int]:
    walk = [start]
    v = start
    while adj[v]:
        w = min(adj[v])
        adj[v].discard(w)
        adj[w].discard(v)
        walk.append(w)
        v = w
    return walk


def euler_partition(h: DynamicGraph | tuple[int, Iterable[Edge]]) -> EulerPartition:
    """Partition the edges into trails and circuits, each odd-degree vertex
    ending exactly one trail.

    Maximal trails are removed starting from odd-degree vertices, then
    closed walks from any vertex that still has edges.
    """
    if isinstance(h, DynamicGraph):
        n, edges = h.n, list(h.edges())
    else:
        n, edges = h[0], list(h[1])
    adj = _adjacency(n, edges)
    part = EulerPartition()
    for v in range(n):
        if len(adj[v]) % 2 == 1:
            walk = _maximal_walk(adj, v)
            part.trails.append(walk)
    for v in range(n):
        while adj[v]:
            part.circuits.append(_maximal_walk(adj, v))
    return part


def euler_circuit(adj: dict[int, set[int]], start: int) -> list[int]:
    """Hierholzer's algorithm on a connected graph with all degrees even.
    Consumes ``adj``; returns the closed vertex sequence from ``start``."""
    stack = [start]
    circuit = []
    while stack:
        v = stack[-1]
        if adj[v]:
            w = min(adj[v])
            adj[v].discard(w)
            adj[w].discard(v)
            stack.append(w)
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return circuit


def _shift_alternating(x: FractionalAssignment, walk: Sequence[int], first: int) -> None:
    # walk edges alternate +first, -first, ... in doubled units
    sign = first
    for i in range(len(walk) - 1):
        e = edge(walk[i], walk[i + 1])
        x.set_twice(e, x.twice(e) + sign)
        sign = -sign


def _components(n: int, edges: Sequence[Edge]) -> list[tuple[list[int], list[Edge]]]:
    adj = _adjacency(n, edges)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s] or not adj[s]:
            continue
        seen[s] = True
        stack, verts = [s], []
        while stack:
            v = stack.pop()
            verts.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        vs = set(verts)
        comps.append((sorted(verts), [e for e in edges if e[0] in vs]))
    return comps


def _simple_cycles(circuit: Sequence[int]) -> list[list[int]]:
    """Split a closed walk into edge-disjoint simple cycles (closed vertex
    sequences)."""
    cycles = []
    stack: list[int] = []
    pos: dict[int, int] = {}
    for v in circuit:
        if v in pos:
            i = pos[v]
            cyc = stack[i:] + [v]
            cycles.append(cyc)
            for w in stack[i + 1:]:
                del pos[w]
            del stack[i + 1:]
        else:
            pos[v] = len(stack)
            stack.append(v)
    return cycles


def _rotate_closed(walk: Sequence[int], v: int) -> list[int]:
    body = list(walk[:-1])
    i = body.index(v)
    body = body[i:] + body[:i]
    return body + [v]


def _even_circuit(verts: Sequence[int], edges: Sequence[Edge]) -> list[int] | None:
    """An even closed trail inside an even-degree component, or None when the
    component is a single odd cycle."""
    adj = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    cycles = _simple_cycles(euler_circuit(adj, verts[0]))
    for cyc in cycles:
        if (len(cyc) - 1) % 2 == 0:
            return cyc
    owner: dict[int, int] = {}
    for idx, cyc in enumerate(cycles):
        for v in cyc[:-1]:
            if v in owner:
                a = _rotate_closed(cycles[owner[v]], v)
                b = _rotate_closed(cyc, v)
                return a + b[1:]
            owner[v] = idx
    return None


def _half_edges_even_degree(x: FractionalAssignment) -> bool:
    deg: dict[int, int] = {}
    for u, v in x.half_edges():
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return all(d % 2 == 0 for d in deg.values())


def round_half_integral(x: FractionalAssignment, b: Sequence[int], g: DynamicGraph | None = None) -> FractionalAssignment:
    """Round a feasible half-integral b-matching to an integral one.

    1. Trails of an Euler partition of the half-valued edges are rounded
       alternately starting with +1/2; their endpoints have slack.
    2. Until a fixpoint, each remaining component with an even number of
       edges, or with a vertex of slack at least 1, is rounded along an Euler
       circuit (from that vertex), and any even closed trail inside a tight
       component is rounded as well.
    3. What remains are vertex-disjoint odd cycles on tight vertices; each is
       rounded starting with -1/2 at its smallest vertex.

    Phases 1 and 2 never decrease the value; phase 3 loses 1/2 per cycle, so
    the result is at least ``(1 - 1/(3*beta)) * value(x)``.
    """
    if not verify_feasible(x, b, g):
        raise ContractError("input is not a feasible half-integral b-matching")
    x = x.copy()
    original = x.value
    n = x.n

    half = x.half_edges()
    if half:
        for trail in euler_partition((n, half)).trails:
            _shift_alternating(x, trail, +1)
    if not _half_edges_even_degree(x):
        raise AssertionError("odd-degree vertex left after rounding trails")

    while True:
        changed = False
        for verts, comp_edges in _components(n, x.half_edges()):
            adj = {v: set() for v in verts}
            for u, v in comp_edges:
                adj[u].add(v)
                adj[v].add(u)
            slack = [v for v in verts if x.twice_load[v] <= 2 * b[v] - 2]
            if len(comp_edges) % 2 == 0:
                _shift_alternating(x, euler_circuit(adj, verts[0]), +1)
                changed = True
            elif slack:
                _shift_alternating(x, euler_circuit(adj, slack[0]), +1)
                changed = True
            else:
                circ = _even_circuit(verts, comp_edges)
                if circ is not None:
                    _shift_alternating(x, circ, +1)
                    changed = True
        if not changed:
            break

    for verts, comp_edges in _components(n, x.half_edges()):
        if len(verts) != len(comp_edges) or len(verts) % 2 == 0 or len(verts) < 3:
            raise AssertionError(f"residual component on {verts} is not an odd cycle")
        if any(x.twice_load[v] != 2 * b[v] for v in verts):
            raise AssertionError("residual odd cycle has a vertex with slack")
        adj = {v: set() for v in verts}
        for u, v in comp_edges:
            adj[u].add(v)
            adj[v].add(u)
        if any(len(s) != 2 for s in adj.values()):
            raise AssertionError("residual component is not a simple cycle")
        _shift_alternating(x, euler_circuit(adj, verts[0]), -1)

    if not x.is_integral():
        raise AssertionError("rounding left fractional entries")
    bound = (1 - Fraction(1, 3 * beta(b))) * original if len(b) else Fraction(0)
    if x.value < bound:
        raise AssertionError(f"rounded value {x.value} below bound {bound}")
    return x
