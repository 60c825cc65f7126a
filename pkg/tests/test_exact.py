from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from densub.corpus import complete, k4_plus_pendant, random_graph, two_triangles
from densub.exact import FlowNetwork, brute_force_densest, brute_force_dks, exact_ldd, maxflow_densest
from densub.exceptions import GraphTooLargeError

from conftest import graphs, naive_densest


@pytest.mark.parametrize("solver", [brute_force_densest, maxflow_densest])
def test_small_examples(solver):
    assert solver(complete(3)).density == 1.0
    assert solver(complete(3)).members == {0, 1, 2}
    r = solver(k4_plus_pendant())
    assert r.members == {0, 1, 2, 3} and r.density == 1.5
    assert solver(complete(2)).members == {0, 1}


def test_flow_network_textbook():
    net = FlowNetwork(4)
    for a, b, c in [(0, 1, 3), (0, 2, 2), (1, 2, 1), (1, 3, 2), (2, 3, 3)]:
        net.add_edge(a, b, c)
    assert net.max_flow(0, 3) == 5


def test_size_limits():
    g = random_graph(21, 0.2, False, np.random.default_rng(0))
    with pytest.raises(GraphTooLargeError):
        brute_force_densest(g)
    with pytest.raises(GraphTooLargeError):
        exact_ldd(random_graph(16, 0.3, False, np.random.default_rng(0)))


def test_dks_examples():
    g = k4_plus_pendant()
    assert brute_force_dks(g, 4) == 1.5
    assert brute_force_dks(g, 2) == 0.5
    assert brute_force_dks(g, 1) == 0.0


def test_exact_ldd_examples():
    dec = exact_ldd(k4_plus_pendant())
    assert dec.levels == (frozenset({0, 1, 2, 3}), frozenset({4}))
    assert dec.lambdas == (1.5, 1.0)
    assert exact_ldd(complete(3)).lambdas == (1.0,)
    dec = exact_ldd(two_triangles())
    assert dec.levels == (frozenset(range(6)),) and dec.lambdas == (1.0,)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_oracles_agree_with_naive(g):
    best, winners = naive_densest(g)
    maximal = max(winners, key=len)
    bf, mf = brute_force_densest(g), maxflow_densest(g)
    if g.is_unweighted:
        assert Fraction(bf.density).limit_denominator(g.n_nodes) == best
        assert bf.density == mf.density
        assert bf.members == maximal and mf.members == maximal
    else:
        assert bf.density == pytest.approx(float(best), rel=1e-12)
        assert mf.density == pytest.approx(float(best), rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(graphs(max_nodes=8))
def test_exact_ldd_properties(g):
    dec = exact_ldd(g)
    assert all(a > b for a, b in zip(dec.lambdas, dec.lambdas[1:]))
    assert frozenset().union(*dec.levels) == frozenset(range(g.n_nodes))
    assert sum(len(lv) for lv in dec.levels) == g.n_nodes
    assert dec.chain[0] == brute_force_densest(g).members
