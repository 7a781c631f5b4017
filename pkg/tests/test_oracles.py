from fractions import Fraction

import pytest

from kecolor.coloring import verify_proper, coloring_from_assignment
from kecolor.graph import DynamicGraph
from kecolor.oracles import OracleRefused, brute_fractional, brute_k_edge_coloring, brute_k_matching, solve_all

import naive
from conftest import graph, path, random_graph, triangle


def test_coloring_examples():
    assert brute_k_edge_coloring(triangle(), 2)[0] == 2
    assert naive.max_k_coloring(list(triangle().edges()), 1) == 1
    assert brute_k_edge_coloring(triangle(), 1)[0] == 1
    pm = graph(8, [(0, 1), (2, 3), (4, 5), (6, 7)])
    assert brute_k_edge_coloring(pm, 1)[0] == 4


def test_coloring_witness_is_proper():
    g = graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)])
    p, f = brute_k_edge_coloring(g, 2)
    wit = coloring_from_assignment(5, 2, f)
    assert wit.p == p and verify_proper(wit, g)


def test_matching_examples():
    assert brute_k_matching(triangle(), 2)[0] == 3
    assert brute_k_matching(triangle(), 1)[0] == 1
    assert brute_k_matching(path(3), 1)[0] == 2


def test_fractional_examples():
    assert naive.max_fractional(3, list(triangle().edges()), 1) == Fraction(3, 2)
    assert brute_fractional(triangle(), 1) == Fraction(3, 2)
    assert brute_fractional(triangle(), 2) == 3
    assert brute_fractional(graph(2, [(0, 1)]), 1) == 1


def test_refusal_above_limits():
    big = graph(8, [(i, j) for i in range(8) for j in range(i + 1, 8)][:15])
    with pytest.raises(OracleRefused):
        brute_k_edge_coloring(big, 2)
    with pytest.raises(OracleRefused):
        brute_fractional(big, 1)
    big17 = graph(8, [(i, j) for i in range(8) for j in range(i + 1, 8)][:17])
    with pytest.raises(OracleRefused):
        brute_k_matching(big17, 1)


def test_oracles_agree_with_enumeration(rng):
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 6), rng.randint(0, 7))
        edges = list(g.edges())
        k = rng.randint(1, 3)
        assert brute_k_edge_coloring(g, k)[0] == naive.max_k_coloring(edges, k)
        assert brute_k_matching(g, k)[0] == naive.max_b_matching(g.n, edges, k)
        assert brute_fractional(g, k) == naive.max_fractional(g.n, edges, k)


def test_sandwich_random(rng):
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 7), rng.randint(0, 10))
        k = rng.randint(1, 3)
        r = solve_all(g, k)
        assert r.p_star <= r.s_star <= r.frac_opt
        assert k * r.s_star <= (k + 1) * r.p_star


def test_solve_all_skips_fraction_when_large():
    g = graph(8, [(i, j) for i in range(8) for j in range(i + 1, 8)][:12])
    r = solve_all(g, 2)
    assert r.frac_opt is None and r.p_star <= r.s_star


def test_empty_graph():
    r = solve_all(DynamicGraph(3), 2)
    assert (r.p_star, r.s_star, r.frac_opt) == (0, 0, 0)
