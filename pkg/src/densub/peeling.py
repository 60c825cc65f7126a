"""Greedy peeling and its load-carrying repetition (Greedy++)."""

from __future__ import annotations

import heapq

import numpy as np

from . import _kernels
from .graph import Graph, density
from .results import DensestResult

__all__ = [
    "peel_order",
    "prefix_densities",
    "greedy_peel",
    "greedy_pp",
    "greedy_pp_rounds",
    "greedy_prefix_at_first_nonincrease",
]


def _bucket_order(g: Graph) -> np.ndarray:
    # per-degree min-heaps of node ids; stale entries skipped on pop
    deg = [int(d) for d in g.weighted_degree]
    buckets = [[] for _ in range(max(deg) + 1)]
    for v, d in enumerate(deg):
        buckets[d].append(v)
    for b in buckets:
        heapq.heapify(b)
    alive = [True] * g.n_nodes
    order = []
    lo = 0
    indptr, adj = g.indptr, g.adj_nodes
    while len(order) < g.n_nodes:
        while not buckets[lo]:
            lo += 1
        v = heapq.heappop(buckets[lo])
        if not alive[v] or deg[v] != lo:
            continue
        alive[v] = False
        order.append(v)
        for x in adj[indptr[v] : indptr[v + 1]]:
            if alive[x]:
                deg[x] -= 1
                heapq.heappush(buckets[deg[x]], int(x))
                if deg[x] < lo:
                    lo = deg[x]
    return np.array(order, dtype=np.int64)


def peel_order(g: Graph, method: str = "auto") -> np.ndarray:
    """Node removal order of min-degree peeling, ties to the lowest id.

    ``method`` is ``"bucket"`` (integer bucket queue, unit weights only),
    ``"heap"`` (binary heap) or ``"auto"``.
    """
    if method == "auto":
        method = "bucket" if g.is_unweighted else "heap"
    if method == "bucket":
        if not g.is_unweighted:
            raise ValueError("bucket peeling needs unit edge weights")
        return _bucket_order(g)
    if method == "heap":
        order, _ = _kernels.peel_min_key(
            g.n_nodes, g.indptr, g.adj_nodes, g.adj_edges, g.weights, np.zeros(g.n_nodes)
        )
        return order
    raise ValueError(f"unknown peeling method {method!r}")


def prefix_densities(g: Graph, order) -> np.ndarray:
    """Density of the remaining set after removing the first ``k`` nodes of ``order``.

    Entry ``k`` for ``k = 0..N-1``.
    """
    n = g.n_nodes
    pos = np.empty(n, dtype=np.int64)
    pos[np.asarray(order)] = np.arange(n)
    gone_at = np.minimum(pos[g.edges_u], pos[g.edges_v])
    lost = np.bincount(gone_at, weights=g.weights, minlength=n)
    remaining = g.total_weight - np.concatenate([[0.0], np.cumsum(lost)[:-1]])
    return remaining / np.arange(n, 0, -1)


def _best_of(g, order, dens):
    k = int(np.argmax(dens))  # first maximum keeps the larger set
    members = frozenset(int(v) for v in order[k:])
    return members, density(g, members)


def greedy_peel(g: Graph, method: str = "auto") -> DensestResult:
    """Charikar-style peeling: 1/2-approximation of the densest subgraph."""
    order = peel_order(g, method)
    members, rho = _best_of(g, order, prefix_densities(g, order))
    return DensestResult(members, rho, sweeps=1)


def greedy_pp_rounds(g: Graph, rounds: int):
    """Yield ``(round, best result so far, loads)`` after each Greedy++ round.

    Each round peels by the smallest carried load plus current induced
    degree; a removed node's load grows by its induced degree at removal.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    loads = np.zeros(g.n_nodes)
    best = None
    for r in range(1, rounds + 1):
        order, at_removal = _kernels.peel_min_key(
            g.n_nodes, g.indptr, g.adj_nodes, g.adj_edges, g.weights, loads
        )
        members, rho = _best_of(g, order, prefix_densities(g, order))
        if best is None or rho > best.density:
            best = DensestResult(members, rho, sweeps=r)
        else:
            best = DensestResult(best.members, best.density, sweeps=r)
        loads = loads + at_removal
        yield r, best, loads


def greedy_pp(g: Graph, rounds: int):
    """Best set over ``rounds`` Greedy++ rounds, and the final carried loads."""
    for _, best, loads in greedy_pp_rounds(g, rounds):
        pass
    return best, loads


def greedy_prefix_at_first_nonincrease(g: Graph) -> frozenset:
    """Remaining set just before the first greedy removal that fails to raise density."""
    order = peel_order(g)
    dens = prefix_densities(g, order)
    for k in range(len(dens) - 1):
        if not dens[k + 1] > dens[k]:
            return frozenset(int(v) for v in order[k:])
    return frozenset(int(v) for v in order[-1:])
