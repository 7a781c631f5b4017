import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kecolor.coloring import verify_proper
from kecolor.graph import ContractError, edge
from kecolor.greedy import GreedyState, current_coloring, greedy_delete, greedy_insert
from kecolor.oracles import brute_k_edge_coloring

GREEDY_RATIO = 1 + 2 * math.sqrt(3) / 3


def maximal(st: GreedyState) -> bool:
    """Direct check: every uncolored edge sees all k colors at its endpoints."""
    f = st.coloring
    for u, v in st.graph.edges():
        if (u, v) in f.assignment:
            continue
        used = {c for e, c in f.assignment.items() if u in e or v in e}
        if len(used) < st.k:
            return False
    return True


def test_insert_colors_first_edge():
    s = GreedyState(2, 2)
    assert greedy_insert(s, (0, 1)) == 1


def test_triangle_buildup():
    s = GreedyState(3, 2)
    assert greedy_insert(s, (0, 1)) == 1
    assert greedy_insert(s, (1, 2)) == 2
    assert greedy_insert(s, (0, 2)) is None
    assert current_coloring(s).p == 2


def test_k1_path_second_edge_uncolored():
    s = GreedyState(3, 1)
    greedy_insert(s, (0, 1))
    assert greedy_insert(s, (1, 2)) is None


def test_delete_recolors_triangle():
    s = GreedyState(3, 2)
    for e in [(0, 1), (1, 2), (0, 2)]:
        greedy_insert(s, e)
    assert greedy_delete(s, (0, 1)) == [(0, 2)]
    f = current_coloring(s)
    assert f.color((0, 2)) == 1 and f.p == 2
    assert maximal(s)


def test_delete_uncolored_edge_no_change():
    s = GreedyState(3, 2)
    for e in [(0, 1), (1, 2), (0, 2)]:
        greedy_insert(s, e)
    before = dict(s.coloring.assignment)
    assert greedy_delete(s, (0, 2)) == []
    assert s.coloring.assignment == before


def test_delete_single_candidate():
    s = GreedyState(3, 1)
    greedy_insert(s, (0, 1))
    greedy_insert(s, (1, 2))
    assert greedy_delete(s, (0, 1)) == [(1, 2)]
    assert s.coloring.color((1, 2)) == 1


def test_one_recolor_per_endpoint():
    # star centre 0 with leaves 1..3, plus edges at leaf side; k = 1
    s = GreedyState(6, 1)
    for e in [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]:
        s.insert(*e)
    assert s.coloring.color((0, 1)) == 1
    rec = s.delete(0, 1)
    assert rec == [(0, 2), (1, 4)]
    assert maximal(s)


def test_invalid_updates_rejected():
    s = GreedyState(3, 1)
    s.insert(0, 1)
    with pytest.raises(ContractError):
        s.insert(1, 0)
    with pytest.raises(ContractError):
        s.delete(1, 2)
    with pytest.raises(ContractError):
        GreedyState(3, 0)


def test_counters_small():
    s = GreedyState(4, 3)
    s.insert(0, 1)
    assert s.counters.colors_examined == 1
    s.insert(0, 2)
    assert s.counters.colors_examined <= min(3, s.counters.degree_at_update)
    s.delete(0, 1)
    assert s.counters.candidates_examined <= 2 * s.counters.degree_at_update


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_maximal_after_every_update(k, seed):
    rng = random.Random(seed)
    n = 7
    s = GreedyState(n, k)
    present = []
    for _ in range(40):
        if present and rng.random() < 0.4:
            e = present.pop(rng.randrange(len(present)))
            s.delete(*e)
        else:
            u, v = rng.sample(range(n), 2)
            e = edge(u, v)
            if e in present:
                continue
            s.insert(*e)
            present.append(e)
        assert maximal(s) and s.is_maximal()
        assert verify_proper(s.coloring, s.graph)
        cnt = s.counters
        assert cnt.colors_examined <= min(k, cnt.degree_at_update)
        assert cnt.candidates_examined <= 2 * cnt.degree_at_update


def test_ratio_on_small_random_streams(rng):
    worst = 1.0
    for trial in range(30):
        k = 1 + trial % 3
        s = GreedyState(6, k)
        present = []
        for _ in range(25):
            if present and rng.random() < 0.3:
                s.delete(*present.pop(rng.randrange(len(present))))
            else:
                e = edge(*rng.sample(range(6), 2))
                if e in present:
                    continue
                s.insert(*e)
                present.append(e)
            p_star = brute_k_edge_coloring(s.graph, k)[0]
            p = s.coloring.p
            assert p_star <= GREEDY_RATIO * p + 1e-9
            if p:
                worst = max(worst, p_star / p)
    assert worst <= GREEDY_RATIO
