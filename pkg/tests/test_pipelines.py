import math
import random

import pytest

from kecolor.coloring import ColoringError, verify_proper
from kecolor.graph import DELETE, INSERT, ContractError, UpdateEvent, edge
from kecolor.pipelines import (
    AmortizationBudget,
    Pipeline,
    current_coloring,
    pipeline_apply,
    recolor_bipartite,
    recolor_matcha,
    recolor_matcho,
)


def ins(e):
    return UpdateEvent(INSERT, e)


def dele(e):
    return UpdateEvent(DELETE, e)


def loaded(variant, n, k, edges, eps=0.25, seed=0):
    p = Pipeline(variant, n, k, eps, seed)
    for e in edges:
        p.apply(ins(e))
    return p


TRI = [(0, 1), (1, 2), (0, 2)]
C4 = [(0, 1), (1, 2), (2, 3), (0, 3)]


def test_budget_floor_eps_p():
    b = AmortizationBudget(0.3)
    b.reset(10)
    assert [b.tick() for _ in range(3)] == [False, False, True]


def test_budget_floor_one():
    b = AmortizationBudget(0.3)
    b.reset(0)
    assert b.remaining == 1 and b.tick()


def test_delete_colored_between_recolors():
    p = Pipeline("matcho", 20, 1, 0.3)
    for i in range(10):
        p.apply(ins((2 * i, 2 * i + 1)))
    p.recolor()
    assert p.coloring.p == 10 and p.budget.remaining == 3
    pipeline_apply(p, dele((0, 1)))
    assert p.coloring.p == 9
    assert p.budget.remaining == 2


def test_insert_stays_uncolored_until_recolor():
    p = Pipeline("matcho", 20, 1, 0.3)
    for i in range(10):
        p.apply(ins((2 * i, 2 * i + 1)))
    p.recolor()
    p.apply(dele((0, 1)))
    p.apply(ins((0, 1)))
    assert p.coloring.color((0, 1)) is None
    assert p.apply(ins((0, 2)))  # third update triggers the recolor
    assert p.coloring.color((0, 1)) is not None


def test_recolor_matcho_triangle():
    p = loaded("matcho", 3, 2, TRI)
    f = recolor_matcho(p)
    assert p.last_matching_size == 3 and f.p == 2
    assert verify_proper(f, p.graph)


def test_recolor_matcho_perfect_matching():
    p = loaded("matcho", 6, 1, [(0, 1), (2, 3), (4, 5)])
    assert recolor_matcho(p).p == 3


def test_recolor_matcho_star_keeps_all():
    p = loaded("matcho", 4, 3, [(0, 1), (0, 2), (0, 3)])
    f = recolor_matcho(p)
    assert f.p == 3 and len(set(f.assignment.values())) == 3


def test_recolor_matcha_triangle():
    p = loaded("matcha", 3, 1, TRI)
    f = recolor_matcha(p)
    assert p.last_matching_size == 1 and f.p == 1


def test_recolor_matcha_empty():
    p = Pipeline("matcha", 5, 2, 0.25)
    assert recolor_matcha(p).p == 0


def test_recolor_matcha_k_matching_identity():
    edges = [(0, 1), (1, 2), (3, 4)]
    p = loaded("matcha", 5, 2, edges)
    f = recolor_matcha(p)
    assert f.p == 3 and p.last_matching_size == 3


@pytest.mark.parametrize("variant", ["matcho-bip", "matcha-bip"])
def test_bipartite_c4(variant):
    p = loaded(variant, 4, 2, C4)
    f = recolor_bipartite(p)
    assert f.p == 4 and f.palette_size == 2
    p1 = loaded(variant, 4, 1, C4)
    f1 = recolor_bipartite(p1)
    assert f1.p <= 2 and f1.p == p1.last_matching_size


@pytest.mark.parametrize("variant", ["matcho-bip", "matcha-bip"])
def test_bipartite_k22(variant):
    p = loaded(variant, 4, 2, [(0, 2), (0, 3), (1, 2), (1, 3)])
    f = recolor_bipartite(p)
    assert f.p == 4 and set(f.assignment.values()) == {1, 2}


def test_bipartite_rejects_odd_cycle():
    p = Pipeline("matcho-bip", 3, 2, 0.25)
    p.apply(ins((0, 1)))
    p.apply(ins((1, 2)))
    with pytest.raises(ColoringError):
        p.apply(ins((0, 2)))


def test_wrong_recolor_variant():
    with pytest.raises(ContractError):
        recolor_matcha(Pipeline("matcho", 3, 1, 0.25))
    with pytest.raises(ContractError):
        recolor_bipartite(Pipeline("matcha", 3, 1, 0.25))
    with pytest.raises(ContractError):
        Pipeline("nope", 3, 1, 0.25)


@pytest.mark.parametrize("variant", ["matcho", "matcha", "matcho-bip", "matcha-bip"])
def test_random_streams(variant):
    rng = random.Random(11)
    for trial in range(4):
        n, k, eps = 16, 1 + trial % 3, 0.25
        p = Pipeline(variant, n, k, eps, seed=trial)
        half = n // 2
        present = []
        recolors = 0
        max_budget = 1
        updates = 0
        for _ in range(400):
            if present and rng.random() < 0.4:
                ev = dele(present.pop(rng.randrange(len(present))))
            else:
                if variant.endswith("bip"):
                    e = (rng.randrange(half), half + rng.randrange(half))
                else:
                    e = edge(*rng.sample(range(n), 2))
                if e in present:
                    continue
                present.append(e)
                ev = ins(e)
            updates += 1
            if p.apply(ev):
                recolors += 1
                max_budget = max(max_budget, p.budget.remaining)
                size = p.last_matching_size
                if variant.endswith("bip"):
                    assert p.coloring.p == size
                else:
                    assert p.coloring.p >= math.ceil(k * size / (k + 1))
            f = current_coloring(p)
            assert verify_proper(f, p.graph)
            assert set(f.assignment) <= set(p.graph.edges())
            assert f.palette_size == k
        steps = p.budget.recolors
        assert recolors == steps
        assert updates / (1 + max_budget) <= recolors <= updates
