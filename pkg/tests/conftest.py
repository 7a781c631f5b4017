import itertools
import random

import pytest

from kecolor.graph import DynamicGraph


def graph(n, edges):
    return DynamicGraph.from_edges(n, edges)


def triangle():
    return graph(3, [(0, 1), (1, 2), (0, 2)])


def path(m):
    return graph(m + 1, [(i, i + 1) for i in range(m)])


def cycle(n):
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_graph(rng: random.Random, n: int, m: int):
    pairs = list(itertools.combinations(range(n), 2))
    return graph(n, rng.sample(pairs, min(m, len(pairs))))


def random_bipartite(rng: random.Random, left: int, right: int, m: int):
    pairs = [(a, left + c) for a in range(left) for c in range(right)]
    return graph(left + right, rng.sample(pairs, min(m, len(pairs))))


@pytest.fixture
def rng():
    return random.Random(12345)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def accept(capsys):
    """Record and print one PASS/FAIL line for an acceptance criterion."""

    def report(num: int, ok: bool, detail: str) -> bool:
        line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print(f"\n{line}")
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
