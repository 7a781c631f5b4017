"""Dynamic simple undirected graphs, update events and the stream format."""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

Edge = tuple[int, int]

INSERT = "insert"
DELETE = "delete"


class ContractError(ValueError):
    """An operation was called with arguments violating its contract."""


class StreamParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def edge(u: int, v: int) -> Edge:
    """Return the canonical form ``(min, max)`` of the edge ``{u, v}``."""
    if u == v:
        raise ContractError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class UpdateEvent(NamedTuple):
    kind: str
    edge: Edge

    @classmethod
    def insert(cls, u: int, v: int) -> "UpdateEvent":
        return cls(INSERT, edge(u, v))

    @classmethod
    def delete(cls, u: int, v: int) -> "UpdateEvent":
        return cls(DELETE, edge(u, v))

    def reversed(self) -> "UpdateEvent":
        return UpdateEvent(DELETE if self.kind == INSERT else INSERT, self.edge)


class DynamicGraph:
    """Simple undirected graph on the fixed vertex set ``range(n)``.

    Edges are stored once per endpoint in ``adj``; the edge count ``m`` is
    maintained incrementally.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ContractError("vertex count must be non-negative")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "DynamicGraph":
        g = cls(n)
        adj = g.adj
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                g.insert(u, v)  # raises with the precise message
            if v not in adj[u]:
                adj[u].add(v)
                adj[v].add(u)
                g.m += 1
        return g

    def copy(self) -> "DynamicGraph":
        g = DynamicGraph(self.n)
        g.adj = [set(s) for s in self.adj]
        g.m = self.m
        return g

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ContractError(f"vertex {v} out of range [0, {self.n})")

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def insert(self, u: int, v: int) -> bool:
        u, v = edge(u, v)
        self._check_vertex(u)
        self._check_vertex(v)
        if v in self.adj[u]:
            return False
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m += 1
        return True

    def delete(self, u: int, v: int) -> bool:
        u, v = edge(u, v)
        self._check_vertex(u)
        self._check_vertex(v)
        if v not in self.adj[u]:
            return False
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1
        return True

    def apply(self, ev: UpdateEvent) -> bool:
        """Apply ``ev``; return False (and leave the graph untouched) when the
        event's precondition does not hold."""
        u, v = ev.edge
        if ev.kind == INSERT:
            return self.insert(u, v)
        if ev.kind == DELETE:
            return self.delete(u, v)
        raise ContractError(f"unknown event kind {ev.kind!r}")

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max(map(len, self.adj), default=0)

    def neighbors(self, v: int) -> list[int]:
        """Neighbors of ``v`` in ascending order."""
        return sorted(self.adj[v])

    def edges(self) -> Iterator[Edge]:
        for u, nbrs in enumerate(self.adj):
            if nbrs:
                for v in sorted(nbrs):
                    if u < v:
                        yield (u, v)

    def incident(self, v: int) -> list[Edge]:
        return [edge(v, w) for w in sorted(self.adj[v])]

    def is_consistent(self) -> bool:
        degsum = 0
        for u, nbrs in enumerate(self.adj):
            degsum += len(nbrs)
            for w in nbrs:
                if w == u or u not in self.adj[w]:
                    return False
        return degsum == 2 * self.m

    def __len__(self) -> int:
        return self.m

    def __contains__(self, e: Edge) -> bool:
        return self.has_edge(*e)

    def __repr__(self) -> str:
        return f"DynamicGraph(n={self.n}, m={self.m})"


def new_graph(n: int) -> DynamicGraph:
    return DynamicGraph(n)


def bipartition(g: DynamicGraph) -> list[int] | None:
    """2-color the vertices by BFS; return the side (0/1) of every vertex, or
    None if ``g`` has an odd cycle."""
    side = [-1] * g.n
    adj = g.adj
    for s in range(g.n):
        if side[s] != -1 or not adj[s]:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def parse_stream(text: str) -> tuple[int, int, list[UpdateEvent]]:
    """Parse the text stream format.

    The first non-comment line is the header ``H <n> <k>``; every following
    line is ``+ <u> <v>`` or ``- <u> <v>``.  Lines starting with ``#`` and
    blank lines are skipped.
    """
    header: tuple[int, int] | None = None
    events: list[UpdateEvent] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "H" or len(parts) != 3:
                raise StreamParseError(lineno, "expected header 'H <n> <k>'")
            try:
                n, k = int(parts[1]), int(parts[2])
            except ValueError:
                raise StreamParseError(lineno, "header values must be integers") from None
            if n < 0 or k < 1:
                raise StreamParseError(lineno, "need n >= 0 and k >= 1")
            header = (n, k)
            continue
        if parts[0] not in ("+", "-") or len(parts) != 3:
            raise StreamParseError(lineno, f"malformed update {line!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise StreamParseError(lineno, "vertex ids must be integers") from None
        if u == v:
            raise StreamParseError(lineno, f"self-loop at vertex {u}")
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise StreamParseError(lineno, f"vertex out of range [0, {header[0]})")
        events.append(UpdateEvent(INSERT if parts[0] == "+" else DELETE, edge(u, v)))
    if header is None:
        raise StreamParseError(0, "missing header")
    return header[0], header[1], events


def format_stream(n: int, k: int, events: Iterable[UpdateEvent]) -> str:
    lines = [f"H {n} {k}"]
    for ev in events:
        lines.append(f"{'+' if ev.kind == INSERT else '-'} {ev.edge[0]} {ev.edge[1]}")
    return "\n".join(lines) + "\n"
