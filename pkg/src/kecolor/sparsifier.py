"""Color-sampling sparsification of a fractional k-matching.

Edges are bucketed by value: bucket ``i`` holds the edges with
``(1+eps)^-i < x_e <= (1+eps)^-(i-1)``, and each bucket keeps a total proper
coloring with ``3 * ceil(k (1+eps)^i)`` colors.  A request keeps whole
buckets whose values are large, and from every other bucket the edges of
``3 * ceil(k d)`` colors drawn without replacement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import ContractError, Edge

_EXACT_TOL = 1e-12


def num_buckets(n: int, eps: float) -> int:
    """Bucket count ``ceil(2 log_{1+eps}(n / eps))`` (at least 1)."""
    if n <= 0:
        return 1
    return max(1, math.ceil(2 * math.log(n / eps) / math.log1p(eps) - _EXACT_TOL))


def d_floor(k: int, eps: float) -> float:
    return max(1 / (k * eps), 4 * math.log(2 / eps) / (k * eps**2))


def default_d(k: int, eps: float) -> float:
    if not 0 < eps < 0.5:
        raise ContractError("eps must lie in (0, 1/2)")
    if k < 1:
        raise ContractError("k must be positive")
    return d_floor(k, eps)


def bucket_index(x: float, eps: float, ell: int | None = None) -> int | None:
    """The ``i`` with ``(1+eps)^-i < x <= (1+eps)^-(i-1)``, or None when
    ``i`` exceeds ``ell``."""
    x = float(x)
    if not 0 < x <= 1:
        raise ContractError(f"value {x} outside (0, 1]")
    t = -math.log(x) / math.log1p(eps)
    r = round(t)
    i = r + 1 if abs(t - r) <= _EXACT_TOL * max(1.0, abs(t)) else math.floor(t) + 1
    if ell is not None and i > ell:
        return None
    return i


@dataclass
class Bucket:
    index: int
    palette: int
    color: dict[Edge, int] = field(default_factory=dict)
    at: dict[int, dict[int, Edge]] = field(default_factory=dict)
    classes: dict[int, list[Edge]] = field(default_factory=dict)

    def add(self, e: Edge, c: int) -> None:
        self.color[e] = c
        for v in e:
            self.at.setdefault(v, {})[c] = e
        self.classes.setdefault(c, []).append(e)

    def remove(self, e: Edge) -> int:
        c = self.color.pop(e)
        for v in e:
            d = self.at[v]
            del d[c]
            if not d:
                del self.at[v]
        cls = self.classes[c]
        cls.remove(e)
        if not cls:
            del self.classes[c]
        return c

    def max_degree(self) -> int:
        return max((len(d) for d in self.at.values()), default=0)


class Sparsifier:
    def __init__(self, n: int, k: int, eps: float, seed: int | None = 0):
        if k < 1:
            raise ContractError("k must be positive")
        if eps <= 0:
            raise ContractError("eps must be positive")
        self.n = n
        self.k = k
        self.eps = eps
        self.ell = num_buckets(n, eps)
        self.rng = np.random.default_rng(seed)
        self.buckets = [
            Bucket(i, 3 * math.ceil(k * (1 + eps) ** i - _EXACT_TOL)) for i in range(self.ell + 1)
        ]
        self.x: dict[Edge, float] = {}
        self.where: dict[Edge, int] = {}
        self.last_request_size: int | None = None
        self.color_draws = 0

    def bucket_of(self, value: float) -> int | None:
        return bucket_index(value, self.eps, self.ell) if value > 0 else None

    def apply_value_change(self, e: Edge, old_x: float, new_x: float) -> None:
        """Move ``e`` to the bucket matching ``new_x``.

        A moved edge gets a color drawn uniformly from those free at both
        endpoints in its new bucket (by rejection sampling).
        """
        if self.x.get(e, 0) != old_x:
            raise ContractError(f"stale old value for {e}: {old_x} != {self.x.get(e, 0)}")
        if new_x < 0 or new_x > 1:
            raise ContractError(f"value {new_x} outside [0, 1]")
        if new_x > 0:
            self.x[e] = new_x
        else:
            self.x.pop(e, None)
        i_new = self.bucket_of(new_x)
        i_old = self.where.get(e)
        if i_new == i_old:
            return
        if i_old is not None:
            self.buckets[i_old].remove(e)
            del self.where[e]
        if i_new is not None:
            b = self.buckets[i_new]
            u, v = e
            at_u, at_v = b.at.get(u, {}), b.at.get(v, {})
            if len(at_u) + len(at_v) >= b.palette:
                raise ContractError(f"bucket {i_new} degree exceeds its palette")
            while True:
                self.color_draws += 1
                c = int(self.rng.integers(1, b.palette + 1))
                if c not in at_u and c not in at_v:
                    break
            b.add(e, c)
            self.where[e] = i_new

    def request(self, d: float | None = None) -> set[Edge]:
        if d is None:
            d = default_d(self.k, self.eps)
        if d < d_floor(self.k, self.eps) * (1 - _EXACT_TOL):
            raise ContractError(f"d = {d} below the floor {d_floor(self.k, self.eps)}")
        budget = 3 * math.ceil(self.k * d - _EXACT_TOL)
        rng = self.rng
        out: set[Edge] = set()
        for b in self.buckets[1:]:
            if not b.color:
                continue
            if d >= (1 + self.eps) ** (b.index - 1) or budget >= b.palette:
                out.update(b.color)
                continue
            used = list(b.classes)
            # the used colors among `budget` draws without replacement from the palette
            hits = int(rng.hypergeometric(len(used), b.palette - len(used), budget))
            if hits == len(used):
                out.update(b.color)
            elif hits:
                for j in rng.choice(len(used), hits, replace=False):
                    out.update(b.classes[used[j]])
        self.last_request_size = len(out)
        return out

    def retained_mass(self) -> float:
        """Sum of ``x_e`` over bucketed edges."""
        return math.fsum(self.x[e] for e in self.where)

    def total_mass(self) -> float:
        return math.fsum(self.x.values())

    def check_tail(self) -> None:
        """Mass outside the buckets is at most eps**2 of the total value."""
        if self.retained_mass() < self.total_mass() - self.eps**2 - _EXACT_TOL:
            raise AssertionError("bucketed mass below c(x) - eps^2")

    def check_edges(self, edges) -> None:
        """Bucket membership and local properness for ``edges``."""
        for e in edges:
            want = self.bucket_of(self.x.get(e, 0))
            if self.where.get(e) != want:
                raise AssertionError(f"edge {e} in bucket {self.where.get(e)}, expected {want}")
            if want is None:
                continue
            b = self.buckets[want]
            c = b.color.get(e)
            if c is None or not 1 <= c <= b.palette:
                raise AssertionError(f"edge {e} uncolored in bucket {want}")
            for v in e:
                if b.at[v].get(c) != e:
                    raise AssertionError(f"color {c} clash at vertex {v} in bucket {want}")
                if len(b.at[v]) > self.k * (1 + self.eps) ** want + _EXACT_TOL:
                    raise AssertionError(f"vertex {v} degree exceeds k(1+eps)^{want} in bucket {want}")

    def check(self) -> None:
        self.check_edges(set(self.x) | set(self.where))
        for b in self.buckets[1:]:
            if b.palette != 3 * math.ceil(self.k * (1 + self.eps) ** b.index - _EXACT_TOL):
                raise AssertionError(f"bucket {b.index} palette mismatch")
            seen = {}
            for e, c in b.color.items():
                for v in e:
                    if (v, c) in seen:
                        raise AssertionError(f"bucket {b.index} coloring not proper")
                    seen[(v, c)] = e
            if sum(len(cls) for cls in b.classes.values()) != len(b.color):
                raise AssertionError(f"bucket {b.index} color classes out of sync")
            if b.max_degree() > self.k * (1 + self.eps) ** b.index + _EXACT_TOL:
                raise AssertionError(f"bucket {b.index} degree exceeds k(1+eps)^i")
