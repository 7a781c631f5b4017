"""Dynamic k-matching maintainers.

:class:`MaximalKMatcher` keeps an integral maximal k-matching, which is a
2-approximation of the maximum k-matching.  :class:`FractionalMatcher`
keeps a feasible half-integral fractional k-matching and recomputes the
exact optimum after every ``max(1, floor(eps * c))`` updates, ``c`` being
the value at the previous rebuild.
"""

from __future__ import annotations

import math

from .graph import ContractError, DELETE, INSERT, DynamicGraph, Edge, UpdateEvent, edge
from .polytope import FractionalAssignment, half_integral_optimum, uniform_b


class MaximalKMatcher:
    def __init__(self, n: int, k: int):
        if k < 1:
            raise ContractError("k must be positive")
        self.k = k
        self.graph = DynamicGraph(n)
        self.matching: set[Edge] = set()
        self.load = [0] * n

    def _add(self, e: Edge) -> None:
        self.matching.add(e)
        self.load[e[0]] += 1
        self.load[e[1]] += 1

    def _remove(self, e: Edge) -> None:
        self.matching.discard(e)
        self.load[e[0]] -= 1
        self.load[e[1]] -= 1

    def insert(self, u: int, v: int) -> set[Edge]:
        e = edge(u, v)
        if not self.graph.insert(*e):
            raise ContractError(f"edge {e} already present")
        if self.load[e[0]] < self.k and self.load[e[1]] < self.k:
            self._add(e)
            return {e}
        return set()

    def delete(self, u: int, v: int) -> set[Edge]:
        e = edge(u, v)
        if not self.graph.delete(*e):
            raise ContractError(f"edge {e} not present")
        if e not in self.matching:
            return set()
        self._remove(e)
        changed = {e}
        k, load = self.k, self.load
        for x in e:
            for w in sorted(self.graph.adj[x]):
                if load[x] >= k:
                    break
                cand = edge(x, w)
                if cand not in self.matching and load[w] < k:
                    self._add(cand)
                    changed.add(cand)
        return changed

    def apply(self, ev: UpdateEvent) -> set[Edge]:
        if ev.kind == INSERT:
            return self.insert(*ev.edge)
        if ev.kind == DELETE:
            return self.delete(*ev.edge)
        raise ContractError(f"unknown event kind {ev.kind!r}")

    def current(self) -> set[Edge]:
        return self.matching

    @property
    def size(self) -> int:
        return len(self.matching)

    def is_maximal_at(self, vertices) -> bool:
        k, load = self.k, self.load
        for x in vertices:
            if load[x] >= k:
                continue
            for w in self.graph.adj[x]:
                if load[w] < k and edge(x, w) not in self.matching:
                    return False
        return True

    def check(self) -> None:
        load = [0] * self.graph.n
        for e in self.matching:
            if e not in self.graph:
                raise AssertionError(f"matched edge {e} not in graph")
            load[e[0]] += 1
            load[e[1]] += 1
        if load != self.load:
            raise AssertionError("matching loads out of sync")
        if any(l > self.k for l in load):
            raise AssertionError("matching exceeds capacity k")
        if not self.is_maximal_at(range(self.graph.n)):
            raise AssertionError("matching is not maximal")


class FractionalMatcher:
    """Half-integral fractional k-matching, exact at each rebuild."""

    def __init__(self, n: int, k: int, eps: float):
        if k < 1:
            raise ContractError("k must be positive")
        if eps <= 0:
            raise ContractError("eps must be positive")
        self.k = k
        self.eps = eps
        self.b = uniform_b(n, k)
        self.graph = DynamicGraph(n)
        self.x = FractionalAssignment(n)
        self.updates_since_rebuild = 0
        self.value_at_rebuild = self.x.value
        self.rebuilds = 0

    def threshold(self) -> int:
        return max(1, math.floor(self.eps * self.value_at_rebuild))

    def apply(self, ev: UpdateEvent) -> dict[Edge, tuple[int, int]]:
        """Apply ``ev``; return ``{edge: (old, new)}`` for every edge whose
        doubled value changed."""
        e = ev.edge
        changes: dict[Edge, tuple[int, int]] = {}
        if ev.kind == INSERT:
            if not self.graph.insert(*e):
                raise ContractError(f"edge {e} already present")
        elif ev.kind == DELETE:
            if not self.graph.delete(*e):
                raise ContractError(f"edge {e} not present")
            old = self.x.set_twice(e, 0)
            if old:
                changes[e] = (old, 0)
        else:
            raise ContractError(f"unknown event kind {ev.kind!r}")
        self.updates_since_rebuild += 1
        if self.updates_since_rebuild >= self.threshold():
            for f, (old, new) in self.rebuild().items():
                prev = changes.get(f, (old, new))[0]
                if prev == new:
                    changes.pop(f, None)
                else:
                    changes[f] = (prev, new)
        return changes

    def rebuild(self) -> dict[Edge, tuple[int, int]]:
        full = [e for e, t in self.x.items() if t == 2]
        new = half_integral_optimum(self.graph, self.b, warm=full)
        changes = {}
        for e in self.x.support() | new.support():
            a, c = self.x.twice(e), new.twice(e)
            if a != c:
                changes[e] = (a, c)
        self.x = new
        self.updates_since_rebuild = 0
        self.value_at_rebuild = new.value
        self.rebuilds += 1
        return changes

    def current(self) -> FractionalAssignment:
        return self.x

    def check(self) -> None:
        for e, t in self.x.items():
            if e not in self.graph:
                raise AssertionError(f"x positive on absent edge {e}")
            if t not in (1, 2):
                raise AssertionError(f"x_{e} not half-integral")
        load = [0] * self.graph.n
        for (u, v), t in self.x.items():
            load[u] += t
            load[v] += t
        if load != self.x.twice_load:
            raise AssertionError("fractional loads out of sync")
        if any(l > 2 * self.k for l in load):
            raise AssertionError("fractional matching exceeds capacity k")


def maximal_insert(st: MaximalKMatcher, e: Edge) -> set[Edge]:
    return st.insert(*e)


def maximal_delete(st: MaximalKMatcher, e: Edge) -> set[Edge]:
    return st.delete(*e)


def fractional_apply(st: FractionalMatcher, ev: UpdateEvent) -> dict[Edge, tuple[int, int]]:
    return st.apply(ev)
