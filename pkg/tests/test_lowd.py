from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from densub import _kernels
from densub.corpus import complete, k4_plus_pendant
from densub.graph import Graph, density
from densub.lowd import (
    Distribution,
    certificate_threshold,
    dual_objective,
    extract_densest,
    init_distribution,
    lowd_edge_update,
    lowd_sweep,
    qp_objective,
    solve,
)

from conftest import graphs, naive_densest


def _state(loads, share_u, w=1.0):
    g = Graph.from_edges([(0, 1)], [w], n_nodes=2)
    return Distribution(g, np.array([share_u]), np.array(loads, dtype=float))


def test_init_loads():
    assert list(init_distribution(complete(3)).loads) == [1.0, 1.0, 1.0]
    assert list(init_distribution(complete(2)).loads) == [0.5, 0.5]
    assert list(init_distribution(k4_plus_pendant()).loads) == [2.0, 1.5, 1.5, 1.5, 0.5]
    d = init_distribution(k4_plus_pendant())
    assert d.sweeps == 0 and np.all(d.share_u == 0.5)


def test_edge_update_balances_to_midpoint():
    d = _state([2.0, 1.0], 0.5)
    assert lowd_edge_update(d, 0) == 0.5
    assert list(d.loads) == [1.5, 1.5]
    assert d.share(0, 0) == 0.0 and d.share(0, 1) == 1.0


def test_edge_update_balanced_is_noop():
    d = _state([1.0, 1.0], 0.3)
    assert lowd_edge_update(d, 0) == 0
    assert list(d.loads) == [1.0, 1.0] and d.share_u[0] == 0.3


def test_edge_update_capped_by_share():
    d = _state([3.0, 1.0], 0.25)
    assert lowd_edge_update(d, 0) == 0.25
    assert list(d.loads) == [2.75, 1.25]


def test_edge_update_reverse_direction():
    d = _state([1.0, 3.0], 0.25)
    assert lowd_edge_update(d, 0) == 0.75  # v holds 0.75, all of it moves
    assert list(d.loads) == [1.75, 2.25] and d.share_u[0] == 1.0


def test_sweep_fixed_point_on_triangle():
    d = init_distribution(complete(3))
    lowd_sweep(d)
    assert list(d.loads) == [1.0, 1.0, 1.0] and d.sweeps == 1


def test_pendant_edge_first_update():
    # pendant edge gets id 0
    edges = [(0, 4), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    g = Graph.from_edges(edges, n_nodes=5)
    d = init_distribution(g)
    # hand execution: min((2.0 - 0.5)/2, 0.5) = 0.5 moves to the pendant node
    assert lowd_edge_update(d, 0) == 0.5
    assert d.loads[0] == 1.5 and d.loads[4] == 1.0


def test_converges_to_decomposition_loads():
    g = k4_plus_pendant()
    d = init_distribution(g)
    for _ in range(200):
        lowd_sweep(d)
    assert d.loads == pytest.approx([1.5, 1.5, 1.5, 1.5, 1.0], abs=1e-9)
    assert dual_objective(d) == pytest.approx(1.5, abs=1e-9)
    assert qp_objective(d) == pytest.approx(10.0, abs=1e-8)


def test_objective_examples():
    assert dual_objective(init_distribution(complete(3))) == 1.0
    assert dual_objective(init_distribution(k4_plus_pendant())) == 2.0
    assert qp_objective(init_distribution(complete(3))) == 3.0
    assert qp_objective(init_distribution(complete(2))) == 0.5


def test_extract_examples():
    r = extract_densest(complete(3), init_distribution(complete(3)))
    assert r.members == {0, 1, 2} and r.density == 1.0
    assert r.certificate_gap == 0.0 and r.certified
    r = extract_densest(complete(2), init_distribution(complete(2)))
    assert r.members == {0, 1} and r.density == 0.5 and r.certified
    g = k4_plus_pendant()
    d = init_distribution(g)
    d.loads = np.array([1.5, 1.5, 1.5, 1.5, 1.0])
    r = extract_densest(g, d)
    assert r.members == {0, 1, 2, 3} and r.density == 1.5


def test_extract_prefers_larger_on_ties():
    g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], n_nodes=6)
    r = extract_densest(g, init_distribution(g))
    assert r.members == frozenset(range(6))


def test_solve_triangle_certified_immediately():
    r, d, trace = solve(complete(3), 50)
    assert r.certified and r.density == 1.0 and r.sweeps == 0
    assert trace.shape == (1, 4)


def test_solve_k4_pendant_exact():
    r, _, trace = solve(k4_plus_pendant(), 10000, certify=True)
    assert r.certified and r.density == 1.5 and r.members == {0, 1, 2, 3}
    assert r.certificate_gap < certificate_threshold(k4_plus_pendant())
    assert np.all(np.diff(trace[:, 0]) == 1)


def test_solve_zero_sweeps_is_init_extraction():
    g = k4_plus_pendant()
    r, d, trace = solve(g, 0, certify=False)
    assert len(trace) == 1 and d.sweeps == 0
    assert r == extract_densest(g, init_distribution(g))


def test_solve_runs_full_budget_without_certify():
    _, d, trace = solve(k4_plus_pendant(), 37, certify=False)
    assert d.sweeps == 37 and len(trace) == 38


def test_weighted_plateau_stop():
    g = Graph.from_edges(k4_plus_pendant_edges(), [1.0, 2.0, 0.5, 1.5, 1.0, 0.25, 3.0], n_nodes=5)
    r, d, trace = solve(g, 100000)
    assert d.sweeps < 100000
    assert not r.certified
    assert abs(trace[-1, 3] - trace[-2, 3]) < 1e-12


def k4_plus_pendant_edges():
    return [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)]


def test_exact_mode_matches_float_on_dyadic_instance():
    g = k4_plus_pendant()
    de, df = init_distribution(g, exact=True), init_distribution(g)
    for _ in range(5):
        lowd_sweep(de)
        lowd_sweep(df)
    assert all(isinstance(x, Fraction) for x in de.loads)
    assert [float(x) for x in de.loads] == list(df.loads)


def test_load_refresh_keeps_consistency():
    g = Graph.from_edges(k4_plus_pendant_edges(), [0.3, 1.7, 0.9, 1.1, 0.2, 1.3, 0.7], n_nodes=5)
    d = init_distribution(g)
    for _ in range(2100):
        lowd_sweep(d)
    assert d.loads == pytest.approx(d.recomputed_loads(), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_per_update_invariants_exact(g):
    d = init_distribution(g, exact=True)
    w = d.weights
    total = sum(w)
    for _ in range(4):
        for e in range(g.n_edges):
            before_qp, before_dual = qp_objective(d), dual_objective(d)
            step = lowd_edge_update(d, e)
            after = qp_objective(d)
            if step > 0:
                assert after < before_qp
            else:
                assert after == before_qp
            assert dual_objective(d) <= before_dual
            assert d.share_u[e] >= 0 and w[e] - d.share_u[e] >= 0
            assert sum(d.loads) == total
        assert list(d.loads) == list(d.recomputed_loads())


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_per_update_invariants_float(g):
    d = init_distribution(g)
    scale = max(1.0, qp_objective(d))
    for _ in range(50):
        worst, misses, cons = _kernels.lowd_sweep_audited(g.edges_u, g.edges_v, g.weights, d.share_u, d.loads, 1e-12 * scale)
        assert worst <= 1e-12 * scale
        assert misses == 0
        assert cons <= 1e-12
    assert d.loads.sum() == pytest.approx(g.total_weight, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(graphs(weighted=False))
def test_certificate_soundness(g):
    r, _, trace = solve(g, 10000, certify=True)
    best, winners = naive_densest(g)
    assert r.certified
    assert Fraction(r.density).limit_denominator(g.n_nodes) == best
    assert r.members in winners
    assert np.all(np.diff(trace[:, 1]) <= 1e-12)


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_converged_one_way(g):
    _, d, _ = solve(g, 20000, certify=False, plateau_tol=1e-12)
    share_v = g.weights - d.share_u
    lu, lv = d.loads[g.edges_u], d.loads[g.edges_v]
    assert np.all(share_v[lv > lu + 1e-6] <= 1e-6)
    assert np.all(d.share_u[lu > lv + 1e-6] <= 1e-6)


def test_stored_density_matches_graph(corpus):
    for _, g in corpus[:40]:
        r, _, _ = solve(g, 500)
        assert r.density == pytest.approx(density(g, r.members), abs=1e-9)
