"""scikit-learn style front end.

The "samples" here are the nodes of one graph; ``fit`` takes anything
:func:`~densub.validation.check_graph` accepts.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .convex import run_baseline
from .decomposition import group_levels
from .exact import brute_force_densest, exact_ldd, maxflow_densest
from .exceptions import GraphValidationError
from .lowd import solve
from .peeling import greedy_peel, greedy_pp
from .pruning import prune as prune_graph
from .validation import check_graph, check_positive_float, check_positive_int

__all__ = ["DensestSubgraph", "LocallyDenseDecomposition", "SOLVER_NAMES"]

SOLVER_NAMES = ("lowd", "greedy", "greedypp", "fw", "mwu", "flow", "brute")


def run_solver(g, solver, n_iter, certify=True):
    """Dispatch to a solver; returns ``(DensestResult, per-node loads or None)``."""
    if solver == "lowd":
        res, d, _ = solve(g, n_iter, certify=certify)
        return res, d.loads
    if solver in ("fw", "mwu"):
        res, d, _ = run_baseline(g, solver, n_iter)
        return res, d.loads
    if solver == "greedypp":
        res, loads = greedy_pp(g, max(n_iter, 1))
        return res, loads / max(n_iter, 1)
    if solver == "greedy":
        return greedy_peel(g), None
    if solver == "flow":
        return maxflow_densest(g), None
    if solver == "brute":
        return brute_force_densest(g), None
    raise GraphValidationError(f"unknown solver {solver!r}; choose from {', '.join(SOLVER_NAMES)}")


class DensestSubgraph(BaseEstimator):
    """Find a maximum-density node set.

    Parameters
    ----------
    solver : {"lowd", "greedy", "greedypp", "fw", "mwu", "flow", "brute"}
    n_iter : int
        Sweep budget for the iterative solvers (rounds for ``greedypp``).
    certify : bool
        Let LOWD stop as soon as its unweighted optimality certificate holds.
    prune : bool
        Run the density lower-bound pruning first and solve on the survivors.
    weighted : bool or None
        ``False`` forces unit weights; ``None`` keeps the input's weights.

    Attributes
    ----------
    graph_ : Graph
    members_ : ndarray of int
        Sorted internal node ids of the found set.
    density_ : float
    certified_ : bool
    loads_ : ndarray or None
        Final per-node loads on ``graph_`` for load-based solvers.
    result_ : DensestResult
    """

    def __init__(self, solver="lowd", n_iter=1000, certify=True, prune=False, weighted=None):
        self.solver = solver
        self.n_iter = n_iter
        self.certify = certify
        self.prune = prune
        self.weighted = weighted

    def fit(self, X, y=None):
        g = check_graph(X, self.weighted)
        check_positive_int(self.n_iter, "n_iter", minimum=0)
        work, back = g, np.arange(g.n_nodes)
        if self.prune:
            keep = np.array(sorted(prune_graph(g).survivors))
            work, back = g.subgraph(keep), keep
        res, loads = run_solver(work, self.solver, self.n_iter, self.certify)
        self.graph_ = g
        self.members_ = np.sort(back[sorted(res.members)])
        self.density_ = res.density
        self.certified_ = res.certified
        self.result_ = res
        if loads is not None:
            full = np.zeros(g.n_nodes)
            full[back] = np.asarray(loads, dtype=np.float64)
            self.loads_ = full
        else:
            self.loads_ = None
        return self

    def fit_predict(self, X, y=None):
        """Fit, then return a 0/1 membership indicator per node."""
        self.fit(X)
        out = np.zeros(self.graph_.n_nodes, dtype=np.int64)
        out[self.members_] = 1
        return out

    @property
    def member_labels_(self):
        check_is_fitted(self, "members_")
        return self.graph_.labels[self.members_]


class LocallyDenseDecomposition(TransformerMixin, BaseEstimator):
    """Nested dense-level decomposition of a graph's nodes.

    ``transform`` maps every node to its level value (column vector), so the
    estimator can feed node features into a pipeline.

    Parameters
    ----------
    n_iter : int
        LOWD sweeps before grouping loads.
    tol : float
        Load gap that separates two levels.
    exact : bool
        Enumerate instead of iterating (at most 15 nodes).
    """

    def __init__(self, n_iter=10000, tol=1e-3, exact=False, weighted=None):
        self.n_iter = n_iter
        self.tol = tol
        self.exact = exact
        self.weighted = weighted

    def fit(self, X, y=None):
        g = check_graph(X, self.weighted)
        check_positive_float(self.tol, "tol")
        if self.exact:
            dec = exact_ldd(g)
            self.loads_ = dec.node_lambda(g.n_nodes)
        else:
            check_positive_int(self.n_iter, "n_iter", minimum=0)
            _, d, _ = solve(g, self.n_iter, certify=False, plateau_tol=0.0)
            dec = group_levels(g, d, self.tol)
            self.loads_ = np.asarray(d.loads, dtype=np.float64)
        self.graph_ = g
        self.decomposition_ = dec
        self.labels_ = dec.labels(g.n_nodes)
        self.lambdas_ = np.array(dec.lambdas)
        return self

    def transform(self, X):
        check_is_fitted(self, "decomposition_")
        g = check_graph(X, self.weighted)
        if g.n_nodes != self.graph_.n_nodes:
            raise GraphValidationError("transform expects the graph the estimator was fitted on")
        return self.decomposition_.node_lambda(g.n_nodes).reshape(-1, 1)
