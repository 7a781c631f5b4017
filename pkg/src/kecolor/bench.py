"""Stream generation, replay with metrics, and invariant verification."""

from __future__ import annotations

import json
import logging
import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import IO, Iterable

from .coloring import PartialColoring, verify_proper
from .graph import DELETE, INSERT, ContractError, DynamicGraph, Edge, UpdateEvent, bipartition, edge, format_stream
from .greedy import GreedyState
from .oracles import OracleRefused, brute_k_edge_coloring
from .pipelines import VARIANTS, Pipeline

log = logging.getLogger("kecolor")

ALGORITHMS = ("greedy",) + VARIANTS
ORACLE_EDGE_LIMIT = 14


class InvariantViolation(AssertionError):
    pass


@dataclass
class RunConfig:
    algo: str
    k: int
    epsilon: float = 0.25
    seed: int = 0
    oracle: bool = False
    stream: str | None = None
    metrics: str | None = None
    timing: bool = True
    full_check_every: int = 500

    def validate(self) -> None:
        if self.algo not in ALGORITHMS:
            raise ContractError(f"unknown algorithm {self.algo!r}; choose from {', '.join(ALGORITHMS)}")
        if self.k < 1:
            raise ContractError("k must be at least 1")
        if self.algo.startswith("matcha") and not 0 < self.epsilon < 0.5:
            raise ContractError("matcha needs epsilon in (0, 1/2)")
        if self.algo != "greedy" and self.epsilon <= 0:
            raise ContractError("epsilon must be positive")


@dataclass
class MetricsRecord:
    step: int
    op: str
    colored: int
    recolored: bool
    matcher_size: int | None
    sparsifier_size: int | None
    oracle_p_star: int | None
    ratio: float | None
    elapsed_ns: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))


_EXPLICIT_PAIRS = 2_000_000


class _IndexedList:
    """List with O(1) membership, append and removal at an index."""

    def __init__(self):
        self.items: list[Edge] = []
        self.pos: dict[Edge, int] = {}

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, e) -> bool:
        return e in self.pos

    def append(self, e: Edge) -> None:
        self.pos[e] = len(self.items)
        self.items.append(e)

    def extend(self, es) -> None:
        for e in es:
            self.append(e)

    def pop_at(self, i: int) -> Edge:
        items = self.items
        e = items[i]
        last = items.pop()
        if i < len(items):
            items[i] = last
            self.pos[last] = i
        del self.pos[e]
        return e


def generate_events(
    n: int,
    steps: int,
    p_delete: float,
    seed: int,
    max_edges: int | None = None,
    bipartite: bool = False,
) -> list[UpdateEvent]:
    """Random valid update sequence, reproducible from ``seed``.

    Each step deletes a uniformly random present edge with probability
    ``p_delete`` (always when no absent edge is left or ``max_edges`` is
    reached) and otherwise inserts a uniformly random absent edge.  With
    ``bipartite``, edges join ``[0, n//2)`` to ``[n//2, n)``.
    """
    if not 0 <= p_delete <= 1:
        raise ContractError("p_delete must lie in [0, 1]")
    rng = random.Random(seed)
    half = n // 2
    pairs = half * (n - half) if bipartite else n * (n - 1) // 2
    capacity = pairs if max_edges is None else min(pairs, max_edges)
    present = _IndexedList()
    # below this many vertex pairs the absent ones are kept explicitly
    absent = _IndexedList() if pairs <= _EXPLICIT_PAIRS else None
    if absent is not None:
        if bipartite:
            absent.extend((u, v) for u in range(half) for v in range(half, n))
        else:
            absent.extend((u, v) for u in range(n) for v in range(u + 1, n))
    events = []

    def random_pair() -> Edge:
        if bipartite:
            return (rng.randrange(half), half + rng.randrange(n - half))
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        return (u, v + 1) if v >= u else (v, u)

    for _ in range(steps):
        m = len(present)
        if capacity == 0:
            break
        if m > 0 and (m >= capacity or rng.random() < p_delete):
            e = present.pop_at(rng.randrange(m))
            if absent is not None:
                absent.append(e)
            events.append(UpdateEvent(DELETE, e))
            continue
        if absent is not None:
            e = absent.pop_at(rng.randrange(len(absent)))
        else:
            e = random_pair()
            while e in present:
                e = random_pair()
        present.append(e)
        events.append(UpdateEvent(INSERT, e))
    return events


def generate_stream(n: int, steps: int, p_delete: float, seed: int, k: int = 1, **kwargs) -> str:
    return format_stream(n, k, generate_events(n, steps, p_delete, seed, **kwargs))


class Algorithm:
    """Uniform driver over Greedy and the pipelines."""

    def __init__(self, algo: str, n: int, k: int, eps: float = 0.25, seed: int = 0):
        self.name = algo
        self.k = k
        if algo == "greedy":
            self.impl = GreedyState(n, k)
        else:
            self.impl = Pipeline(algo, n, k, eps, seed)

    @property
    def graph(self) -> DynamicGraph:
        return self.impl.graph

    @property
    def coloring(self) -> PartialColoring:
        return self.impl.coloring

    @property
    def matcher_size(self) -> int | None:
        return None if self.name == "greedy" else self.impl.matcher_size

    @property
    def sparsifier_size(self) -> int | None:
        sp = getattr(self.impl, "sparsifier", None)
        return None if sp is None else sp.last_request_size

    def apply(self, ev: UpdateEvent) -> bool:
        if self.name == "greedy":
            out = self.impl.apply(ev)
            return ev.kind == DELETE and bool(out)
        return self.impl.apply(ev)


class Checker:
    """Per-step invariant checks for one algorithm run.

    Local checks after every update cover everything the update can have
    changed (its endpoints and every edge whose color changed); full checks
    rerun every invariant from scratch every ``full_every`` steps, after
    fractional rebuilds, and at the end.
    """

    def __init__(self, alg: Algorithm, full_every: int = 500):
        self.alg = alg
        self.full_every = full_every
        self.m = 0
        self.step = 0
        self._rebuilds = 0

    def fail(self, msg: str):
        raise InvariantViolation(msg)

    def after(self, ev: UpdateEvent, recolored: bool) -> None:
        self.step += 1
        alg = self.alg
        g = alg.graph
        u, v = ev.edge
        self.m += 1 if ev.kind == INSERT else -1
        if g.m != self.m:
            self.fail(f"edge count {g.m}, expected {self.m}")
        present = v in g.adj[u]
        if present != (u in g.adj[v]) or present != (ev.kind == INSERT):
            self.fail(f"adjacency of {ev.edge} inconsistent after {ev.kind}")
        self._check_coloring_local(alg.coloring, g)
        full = self.step % self.full_every == 0
        if alg.name == "greedy":
            self._check_greedy_local(ev)
        else:
            full = self._check_pipeline_local(ev, recolored) or full
        if full:
            self.full()

    def _check_coloring_local(self, f: PartialColoring, g: DynamicGraph) -> None:
        k = self.alg.k
        if f.palette_size != k:
            self.fail(f"palette {f.palette_size} != k = {k}")
        for e in f.drain_touched():
            c = f.assignment.get(e)
            x, y = e
            if c is None:
                if any(w == y for w in f.at[x].values()) or any(w == x for w in f.at[y].values()):
                    self.fail(f"uncolored edge {e} still indexed")
                continue
            if not 1 <= c <= k:
                self.fail(f"edge {e} has color {c} outside [1, {k}]")
            if e not in g:
                self.fail(f"colored edge {e} not in the graph")
            if f.at[x].get(c) != y or f.at[y].get(c) != x:
                self.fail(f"color {c} of {e} clashes at an endpoint")

    def _blocked(self, e: Edge) -> bool:
        at = self.alg.coloring.at
        a, b = at[e[0]], at[e[1]]
        return all(c in a or c in b for c in range(1, self.alg.k + 1))

    def _check_greedy_local(self, ev: UpdateEvent) -> None:
        st = self.alg.impl
        f = st.coloring
        for x in ev.edge:
            for w in st.graph.adj[x]:
                e = edge(x, w)
                if e not in f.assignment and not self._blocked(e):
                    self.fail(f"coloring not maximal at uncolored edge {e}")
        cnt = st.counters
        if ev.kind == INSERT:
            if cnt.colors_examined > min(st.k, cnt.degree_at_update):
                self.fail(f"insertion examined {cnt.colors_examined} colors")
        elif cnt.candidates_examined > 2 * cnt.degree_at_update:
            self.fail(f"deletion examined {cnt.candidates_examined} candidate edges")

    def _check_pipeline_local(self, ev: UpdateEvent, recolored: bool) -> bool:
        p = self.alg.impl
        k = p.k
        full = False
        if p.budget.remaining < 1:
            self.fail("amortization budget exhausted without recoloring")
        if p.fractional:
            x = p.matcher.x
            touched = set(p.last_changes) | {ev.edge}
            for e in touched:
                if x.twice(e) and e not in p.graph:
                    self.fail(f"fractional value on absent edge {e}")
                for a in e:
                    if x.twice_load[a] > 2 * k:
                        self.fail(f"fractional load at {a} exceeds k")
            p.sparsifier.check_edges(touched)
            fm = p.matcher
            if fm.rebuilds != self._rebuilds:
                self._rebuilds = fm.rebuilds
                p.sparsifier.check_tail()
            elif fm.x.value < fm.value_at_rebuild - fm.updates_since_rebuild:
                self.fail("fractional value fell faster than one unit per update")
        else:
            mm = p.matcher
            for a in ev.edge:
                if mm.load[a] > k or any(mm.load[w] > k for w in mm.graph.adj[a]):
                    self.fail(f"k-matching capacity exceeded near {a}")
            if not mm.is_maximal_at(ev.edge):
                self.fail(f"k-matching not maximal at {ev.edge}")
        if recolored:
            colored, size = p.coloring.p, p.last_matching_size
            if p.bipartite and colored != size:
                self.fail(f"bipartite recolor kept {colored} of {size} matched edges")
            if not p.bipartite and colored * (k + 1) < k * size:
                self.fail(f"recolor kept {colored} < k/(k+1) * {size}")
        return full

    def full(self) -> None:
        alg = self.alg
        g = alg.graph
        if not g.is_consistent() or g.m != self.m:
            self.fail("graph adjacency inconsistent")
        if not verify_proper(alg.coloring, g):
            self.fail("coloring is not proper")
        try:
            if alg.name == "greedy":
                if not alg.impl.is_maximal():
                    self.fail("greedy coloring not maximal")
            else:
                alg.impl.matcher.check()
                if alg.impl.sparsifier is not None:
                    alg.impl.sparsifier.check()
        except InvariantViolation:
            raise
        except AssertionError as exc:
            self.fail(str(exc))


def _corrupt(alg: Algorithm) -> None:
    """Test hook: plant an out-of-palette color on some edge."""
    f = alg.coloring
    e = next(iter(alg.graph.edges()), (0, 1))
    f.assignment[e] = f.palette_size + 1
    f.touched.add(e)


class OracleCache:
    def __init__(self, k: int, limit: int = ORACLE_EDGE_LIMIT):
        self.k = k
        self.limit = limit
        self.cache: dict[frozenset, int] = {}
        self.warned = False

    def p_star(self, g: DynamicGraph) -> int | None:
        if g.m > self.limit:
            if not self.warned:
                log.warning("oracle skipped: %d edges exceeds limit %d", g.m, self.limit)
                self.warned = True
            return None
        key = frozenset(g.edges())
        if key not in self.cache:
            try:
                self.cache[key] = brute_k_edge_coloring(g, self.k, self.limit)[0]
            except OracleRefused:
                return None
        return self.cache[key]


def check_stream(cfg: RunConfig, n: int, events: list[UpdateEvent]) -> None:
    """Reject streams the chosen algorithm cannot run on."""
    if not cfg.algo.endswith("-bip"):
        return
    union = DynamicGraph.from_edges(n, {ev.edge for ev in events if ev.kind == INSERT})
    if bipartition(union) is None:
        raise ContractError(f"{cfg.algo} needs a bipartite stream (see gen --bipartite)")


def ratio(p_star: int | None, p: int) -> float | None:
    if p_star is None:
        return None
    if p == 0:
        return 1.0 if p_star == 0 else None
    return p_star / p


def replay(
    cfg: RunConfig,
    n: int,
    events: Iterable[UpdateEvent],
    out: IO[str] | None = None,
    check: bool = False,
    corrupt_at: int | None = None,
) -> Algorithm:
    """Replay ``events``; write one metrics line per update to ``out``.

    With ``check`` every step is verified and the first failure raises
    :class:`InvariantViolation` carrying the step number.
    """
    cfg.validate()
    alg = Algorithm(cfg.algo, n, cfg.k, cfg.epsilon, cfg.seed)
    checker = Checker(alg, cfg.full_check_every) if check else None
    oracle = OracleCache(cfg.k) if cfg.oracle else None
    step = 0
    for step, ev in enumerate(events, start=1):
        t0 = time.perf_counter_ns()
        try:
            recolored = alg.apply(ev)
        except ContractError as exc:
            raise InvariantViolation(f"step {step}: {exc}") from exc
        elapsed = time.perf_counter_ns() - t0 if cfg.timing else 0
        if corrupt_at == step:
            _corrupt(alg)
        if checker is not None:
            try:
                checker.after(ev, recolored)
            except InvariantViolation as exc:
                raise InvariantViolation(f"step {step}: {exc}") from None
        if out is not None:
            p = alg.coloring.p
            ps = oracle.p_star(alg.graph) if oracle is not None else None
            rec = MetricsRecord(
                step=step,
                op=ev.kind,
                colored=p,
                recolored=recolored,
                matcher_size=alg.matcher_size,
                sparsifier_size=alg.sparsifier_size if recolored else None,
                oracle_p_star=ps,
                ratio=ratio(ps, p),
                elapsed_ns=elapsed,
            )
            out.write(rec.to_json() + "\n")
    if checker is not None and step:
        try:
            checker.full()
        except InvariantViolation as exc:
            raise InvariantViolation(f"step {step}: {exc}") from None
    return alg


def verify(cfg: RunConfig, n: int, events: Iterable[UpdateEvent], corrupt_at: int | None = None) -> tuple[bool, str]:
    try:
        replay(cfg, n, events, check=True, corrupt_at=corrupt_at)
    except InvariantViolation as exc:
        return False, str(exc)
    return True, "ok"
