"""Amortized k-edge coloring pipelines built on dynamic k-matchings.

Every pipeline keeps a k-matching up to date after each update but only
recolors when its budget of ``max(1, floor(eps * p))`` updates runs out,
``p`` being the number of edges colored at the last recoloring.  Between
recolorings the installed coloring only loses deleted edges; inserted edges
stay uncolored.

Variants:

``matcho``      maximal k-matching, Vizing coloring, drop the least used color
``matcha``      fractional k-matching + sparsifier, exact solve and rounding
                on the sparsified graph, then as ``matcho``
``matcho-bip``  as ``matcho`` but the matching is colored with k colors
``matcha-bip``  as ``matcha`` with an integral solve and k-color coloring
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coloring import ColoringError, PartialColoring, bipartite_color, discard_least_used, vizing_color
from .graph import DELETE, INSERT, ContractError, DynamicGraph, Edge, UpdateEvent, bipartition
from .kmatch import FractionalMatcher, MaximalKMatcher
from .polytope import half_integral_optimum, round_half_integral, uniform_b
from .sparsifier import Sparsifier, default_d

VARIANTS = ("matcho", "matcha", "matcho-bip", "matcha-bip")


@dataclass
class AmortizationBudget:
    eps: float
    p_at_recolor: int = 0
    remaining: int = 1
    recolors: int = 0

    def tick(self) -> bool:
        """Count one update; True when a recoloring is due."""
        self.remaining -= 1
        return self.remaining <= 0

    def reset(self, p: int) -> None:
        self.p_at_recolor = p
        self.remaining = max(1, math.floor(self.eps * p))
        self.recolors += 1


class Pipeline:
    def __init__(self, variant: str, n: int, k: int, eps: float, seed: int | None = 0):
        if variant not in VARIANTS:
            raise ContractError(f"unknown pipeline variant {variant!r}")
        if k < 1:
            raise ContractError("k must be positive")
        if eps <= 0:
            raise ContractError("eps must be positive")
        self.variant = variant
        self.n = n
        self.k = k
        self.eps = eps
        self.bipartite = variant.endswith("-bip")
        self.fractional = variant.startswith("matcha")
        if self.fractional:
            self.matcher = FractionalMatcher(n, k, eps)
            self.sparsifier = Sparsifier(n, k, eps, seed)
        else:
            self.matcher = MaximalKMatcher(n, k)
            self.sparsifier = None
        self.coloring = PartialColoring(n, k)
        self.budget = AmortizationBudget(eps)
        self.last_matching_size = 0
        self.last_sides: list[int] | None = None
        # fractional value changes {edge: (old, new)} made by the last update
        self.last_changes: dict[Edge, tuple[int, int]] = {}

    @property
    def graph(self) -> DynamicGraph:
        return self.matcher.graph

    @property
    def matcher_size(self) -> int:
        if self.fractional:
            return len(self.matcher.x.support())
        return self.matcher.size

    def apply(self, ev: UpdateEvent) -> bool:
        """Process one update; return True if it triggered a recoloring."""
        if ev.kind not in (INSERT, DELETE):
            raise ContractError(f"unknown event kind {ev.kind!r}")
        if self.fractional:
            self.last_changes = self.matcher.apply(ev)
            for e, (old, new) in self.last_changes.items():
                self.sparsifier.apply_value_change(e, old / 2, new / 2)
        else:
            self.matcher.apply(ev)
        if ev.kind == DELETE:
            self.coloring.unassign(ev.edge)
        if self.budget.tick():
            self.recolor()
            return True
        return False

    def recolor(self) -> PartialColoring:
        """Recompute the k-matching's coloring and install it."""
        f = self._color_matching(self._k_matching())
        # edges of the old coloring count as touched for the local checks
        f.touched = set(self.coloring.assignment) | set(f.assignment)
        self.coloring = f
        self.budget.reset(f.p)
        return f

    def _k_matching(self) -> set[Edge]:
        if not self.fractional:
            return set(self.matcher.matching)
        h_edges = self.sparsifier.request(default_d(self.k, self.eps))
        h = DynamicGraph.from_edges(self.n, h_edges)
        b = uniform_b(self.n, self.k)
        x_full = self.matcher.x.twice_x
        warm = [e for e in h_edges if x_full.get(e) == 2]
        if not self.bipartite:
            x = half_integral_optimum(h, b, warm=warm)
            return round_half_integral(x, b, h).support()
        sides = self._sides(h)
        x = half_integral_optimum(h, b, warm=warm, sides=sides)
        if not x.is_integral():
            raise AssertionError("bipartite optimum is not integral")
        return x.support()

    def _sides(self, g: DynamicGraph) -> list[int]:
        sides = bipartition(g)
        if sides is None:
            raise ColoringError("bipartite variant on a non-bipartite graph")
        self.last_sides = sides
        return sides

    def _color_matching(self, m_edges: set[Edge]) -> PartialColoring:
        self.last_matching_size = len(m_edges)
        sub = DynamicGraph.from_edges(self.n, m_edges)
        if not self.bipartite:
            return discard_least_used(vizing_color(sub), self.k)
        # the matching is a subgraph of H, whose sides are already known
        sides = self.last_sides if self.fractional else self._sides(sub)
        f = bipartite_color(sub, sides)
        out = PartialColoring(self.n, self.k)
        for e, c in f.assignment.items():
            out.assign(e, c)
        return out

    def _recolor_as(self, *variants: str) -> PartialColoring:
        if self.variant not in variants:
            raise ContractError(f"{self.variant} pipeline cannot recolor as {variants}")
        return self.recolor()

    def recolor_matcho(self) -> PartialColoring:
        return self._recolor_as("matcho")

    def recolor_matcha(self) -> PartialColoring:
        return self._recolor_as("matcha")

    def recolor_bipartite(self) -> PartialColoring:
        return self._recolor_as("matcho-bip", "matcha-bip")

    def current_coloring(self) -> PartialColoring:
        return self.coloring


def pipeline_apply(st: Pipeline, ev: UpdateEvent) -> bool:
    return st.apply(ev)


def recolor_matcho(st: Pipeline) -> PartialColoring:
    return st.recolor_matcho()


def recolor_matcha(st: Pipeline) -> PartialColoring:
    return st.recolor_matcha()


def recolor_bipartite(st: Pipeline) -> PartialColoring:
    return st.recolor_bipartite()


def current_coloring(st: Pipeline) -> PartialColoring:
    return st.coloring
