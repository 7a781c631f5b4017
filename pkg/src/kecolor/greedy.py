"""The dynamic Greedy k-edge coloring algorithm.

Insertions color the new edge with the smallest common free color, if any.
Deleting an edge of color ``c`` tries to color one uncolored edge at each
endpoint with ``c``.  The coloring stays maximal: no uncolored edge has a
color free at both its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import PartialColoring
from .graph import ContractError, DELETE, INSERT, DynamicGraph, Edge, UpdateEvent, edge


@dataclass
class GreedyCounters:
    inserts: int = 0
    deletes: int = 0
    # the fields below describe the last update only
    colors_examined: int = 0
    scan_steps: int = 0
    candidates_examined: int = 0
    # larger endpoint degree, with the updated edge counted
    degree_at_update: int = 0


class GreedyState:
    def __init__(self, n: int, k: int):
        if k < 1:
            raise ContractError("k must be positive")
        self.k = k
        self.graph = DynamicGraph(n)
        self.coloring = PartialColoring(n, k)
        self.counters = GreedyCounters()

    def insert(self, u: int, v: int) -> int | None:
        e = edge(u, v)
        if not self.graph.insert(*e):
            raise ContractError(f"edge {e} already present")
        stats: dict = {}
        c = self.coloring.common_free_color(e[0], e[1], stats)
        if c is not None:
            self.coloring.assign(e, c)
        cnt = self.counters
        cnt.inserts += 1
        cnt.candidates_examined = 0
        cnt.colors_examined = stats["examined"]
        cnt.scan_steps = stats["steps"]
        cnt.degree_at_update = max(len(self.graph.adj[e[0]]), len(self.graph.adj[e[1]]))
        return c

    def delete(self, u: int, v: int) -> list[Edge]:
        """Delete ``{u, v}``; return the edges recolored as a consequence."""
        e = edge(u, v)
        if e not in self.graph:
            raise ContractError(f"edge {e} not present")
        adj = self.graph.adj
        cnt = self.counters
        cnt.degree_at_update = max(len(adj[e[0]]), len(adj[e[1]]))
        self.graph.delete(*e)
        c = self.coloring.unassign(e)
        cnt.deletes += 1
        cnt.colors_examined = cnt.scan_steps = cnt.candidates_examined = 0
        recolored: list[Edge] = []
        if c is None:
            return recolored
        f = self.coloring
        for x in e:
            if c in f.at[x]:
                # an edge colored at the other endpoint already took c here
                continue
            for w in sorted(adj[x]):
                cnt.candidates_examined += 1
                cand = edge(x, w)
                if cand in f.assignment:
                    continue
                if c not in f.at[w]:
                    f.assign(cand, c)
                    recolored.append(cand)
                    break
        return recolored

    def apply(self, ev: UpdateEvent):
        if ev.kind == INSERT:
            return self.insert(*ev.edge)
        if ev.kind == DELETE:
            return self.delete(*ev.edge)
        raise ContractError(f"unknown event kind {ev.kind!r}")

    def current_coloring(self) -> PartialColoring:
        return self.coloring

    def uncolored_blocked(self, e: Edge) -> bool:
        """True if the uncolored edge ``e`` has no common free color."""
        return self.coloring.common_free_color(*e) is None

    def is_maximal(self) -> bool:
        f = self.coloring
        return all(e in f.assignment or self.uncolored_blocked(e) for e in self.graph.edges())


def greedy_insert(st: GreedyState, e: Edge):
    return st.insert(*e)


def greedy_delete(st: GreedyState, e: Edge):
    return st.delete(*e)


def current_coloring(st: GreedyState) -> PartialColoring:
    return st.coloring
