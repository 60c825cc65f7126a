"""Locally optimal weight distribution (LOWD) for densest subgraph search.

Every edge's weight is split between its two endpoints; a node's load is
the sum of the portions it holds. A sweep visits the edges in id order and
moves weight from the more loaded endpoint to the less loaded one, as far
as balancing the two loads allows. The maximum load is an upper bound on
the densest-subgraph density that never increases, and the sum of squared
loads strictly decreases with every non-trivial move; its minimizer is the
locally-dense decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .graph import Graph, density
from .results import DensestResult

__all__ = [
    "Distribution",
    "init_distribution",
    "lowd_edge_update",
    "lowd_sweep",
    "dual_objective",
    "qp_objective",
    "extract_densest",
    "certificate_threshold",
    "solve",
    "TRACE_COLUMNS",
]

TRACE_COLUMNS = ("sweep", "dual_D", "best_density", "qp_objective")

# full load recomputation period, caps incremental drift
LOAD_REFRESH = 1024


@dataclass
class Distribution:
    """Per-edge weight split plus per-node loads.

    ``share_u[e]`` is the portion of edge ``e`` held by ``graph.edges_u[e]``;
    the other endpoint holds ``weights[e] - share_u[e]``, so the split always
    sums to the edge weight. Arrays are float64, or object arrays of
    :class:`fractions.Fraction` for exact arithmetic.
    """

    graph: Graph
    share_u: np.ndarray
    loads: np.ndarray
    sweeps: int = 0
    weights: np.ndarray | None = None

    def __post_init__(self):
        if self.weights is None:
            self.weights = self.graph.weights

    @property
    def exact(self) -> bool:
        return self.loads.dtype == object

    @property
    def share_v(self) -> np.ndarray:
        return self.weights - self.share_u

    def share(self, e: int, node: int):
        if node == self.graph.edges_u[e]:
            return self.share_u[e]
        if node == self.graph.edges_v[e]:
            return self.weights[e] - self.share_u[e]
        raise ValueError(f"node {node} is not an endpoint of edge {e}")

    def recomputed_loads(self) -> np.ndarray:
        g = self.graph
        if self.exact:
            out = np.array([Fraction(0)] * g.n_nodes, dtype=object)
            for e, (u, v) in enumerate(zip(g.edges_u, g.edges_v)):
                out[u] += self.share_u[e]
                out[v] += self.weights[e] - self.share_u[e]
            return out
        return _kernels.recompute_loads(
            g.n_nodes, g.edges_u, g.edges_v, g.weights, np.asarray(self.share_u, dtype=np.float64)
        )

    def refresh_loads(self) -> None:
        self.loads = self.recomputed_loads()

    def copy(self) -> "Distribution":
        return Distribution(self.graph, self.share_u.copy(), self.loads.copy(), self.sweeps, self.weights)


def init_distribution(g: Graph, exact: bool = False) -> Distribution:
    """Split every edge equally between its endpoints."""
    if exact:
        w = np.array([Fraction(float(x)) for x in g.weights], dtype=object)
        d = Distribution(g, w / 2, np.zeros(g.n_nodes, dtype=object), weights=w)
        d.refresh_loads()
        return d
    share = g.weights / 2.0
    return Distribution(g, share, g.weighted_degree / 2.0)


def lowd_edge_update(d: Distribution, e: int):
    """Rebalance edge ``e``; return the amount of weight moved."""
    g = d.graph
    u, v = int(g.edges_u[e]), int(g.edges_v[e])
    lu, lv = d.loads[u], d.loads[v]
    w = d.weights[e]
    if lu > lv:
        step = min((lu - lv) / 2, d.share_u[e])
        d.share_u[e] -= step
        d.loads[u] = lu - step
        d.loads[v] = lv + step
    elif lv > lu:
        step = min((lv - lu) / 2, w - d.share_u[e])
        d.share_u[e] = min(d.share_u[e] + step, w)
        d.loads[u] = lu + step
        d.loads[v] = lv - step
    else:
        step = 0 * lu
    return step


def lowd_sweep(d: Distribution, g: Graph | None = None) -> Distribution:
    """Apply :func:`lowd_edge_update` to every edge once, in id order."""
    g = d.graph if g is None else g
    if g is not d.graph:
        raise ValueError("distribution belongs to a different graph")
    if d.exact:
        for e in range(g.n_edges):
            lowd_edge_update(d, e)
    else:
        _kernels.lowd_sweep(g.edges_u, g.edges_v, g.weights, d.share_u, d.loads)
    d.sweeps += 1
    if not d.exact and d.sweeps % LOAD_REFRESH == 0:
        d.refresh_loads()
    return d


def dual_objective(d: Distribution):
    """Maximum node load, an upper bound on the optimal density."""
    return max(d.loads) if d.exact else float(d.loads.max())


def qp_objective(d: Distribution):
    """Sum of squared node loads."""
    if d.exact:
        return sum(x * x for x in d.loads)
    return float(np.dot(d.loads, d.loads))


def certificate_threshold(g: Graph) -> float:
    """Gap below which an unweighted result is provably optimal, else 0."""
    n = g.n_nodes
    if not g.is_unweighted or n < 2:
        return 0.0
    return 1.0 / (n * (n - 1))


def _certified(g, gap):
    # strict margin so roundoff in the loads cannot tip a boundary case
    thr = certificate_threshold(g)
    return thr > 0 and gap < thr * (1 - 1e-9)


def _load_order(d: Distribution) -> np.ndarray:
    if d.exact:
        return np.array(sorted(range(len(d.loads)), key=lambda v: (d.loads[v], v)), dtype=np.int64)
    return np.argsort(d.loads, kind="stable")


def extract_densest(g: Graph, d: Distribution) -> DensestResult:
    """Peel nodes in increasing load order and keep the densest remainder.

    Equal loads are peeled lowest id first; among equally dense remainders
    the larger one wins.
    """
    order = _load_order(d)
    k, _ = _kernels.peel_best_prefix(order, g.indptr, g.adj_nodes, g.adj_edges, g.weights, g.total_weight)
    members = frozenset(int(v) for v in order[k:])
    rho = density(g, members)
    gap = float(dual_objective(d)) - rho
    return DensestResult(members, rho, d.sweeps, gap, _certified(g, gap))


def solve(g: Graph, max_sweeps: int = 1000, certify: bool = True, plateau_tol: float = 1e-12):
    """Run LOWD from the equal split.

    Stops early once the unweighted optimality certificate holds (when
    ``certify`` is set), or on weighted graphs once the sum of squared loads
    changes by less than ``plateau_tol`` in a sweep. The returned result is
    the densest set seen after any sweep.

    Returns
    -------
    result : DensestResult
    distribution : Distribution
        Final state.
    trace : ndarray, shape (sweeps + 1, 4)
        Rows per :data:`TRACE_COLUMNS`, starting with the initial state.
    """
    if max_sweeps < 0:
        raise ValueError("max_sweeps must be >= 0")
    d = init_distribution(g)
    trace = np.zeros((max_sweeps + 1, len(TRACE_COLUMNS)))
    best_mask = np.ones(g.n_nodes, dtype=bool)
    cert_thr = certificate_threshold(g) * (1 - 1e-9) if certify else 0.0
    plateau = plateau_tol if not g.is_unweighted else 0.0
    t = _kernels.lowd_run(
        g.edges_u, g.edges_v, g.weights, d.share_u, d.loads,
        g.indptr, g.adj_nodes, g.adj_edges, g.total_weight,
        max_sweeps, cert_thr, plateau, LOAD_REFRESH, trace, best_mask,
    )
    d.sweeps = int(t)
    members = frozenset(int(v) for v in np.flatnonzero(best_mask))
    rho = density(g, members)
    gap = float(trace[t, 1]) - rho
    result = DensestResult(members, rho, d.sweeps, gap, _certified(g, gap))
    return result, d, trace[: t + 1]
