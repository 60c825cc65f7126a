"""Locally-dense decomposition from converged loads, and what it certifies.

At the optimum of the squared-load objective every node's load equals the
density increment of its level, and an edge joining two levels is held
entirely by its lower-load endpoint. Grouping nodes by load therefore
recovers the nested chain, and prefix sums of the sorted loads bound the
density of any ``k``-node subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import GraphValidationError
from .graph import Graph, induced_weight
from .lowd import Distribution

__all__ = ["Decomposition", "group_levels", "levels_from_loads", "verify_one_way", "dks_upper_bound"]


@dataclass(frozen=True)
class Decomposition:
    """Nested chain ``B_1 < B_2 < ... < B_k = V`` stored as level differences.

    ``lambdas[i]`` is the density increment of level ``i``; ``mean_loads``
    keeps the raw averaged loads the levels were grouped from, when any.
    """

    levels: tuple
    lambdas: tuple
    mean_loads: tuple | None = None

    @property
    def sizes(self) -> tuple:
        """Cumulative sizes ``|B_1|, ..., |B_k|``."""
        return tuple(np.cumsum([len(lv) for lv in self.levels]).tolist())

    @property
    def chain(self) -> list:
        out, acc = [], frozenset()
        for lv in self.levels:
            acc = acc | lv
            out.append(acc)
        return out

    def node_lambda(self, n_nodes: int) -> np.ndarray:
        lam = np.empty(n_nodes)
        for lv, x in zip(self.levels, self.lambdas):
            lam[list(lv)] = x
        return lam

    def labels(self, n_nodes: int) -> np.ndarray:
        """Level index of every node, 0 for the densest level."""
        out = np.empty(n_nodes, dtype=np.int64)
        for i, lv in enumerate(self.levels):
            out[list(lv)] = i
        return out


def level_lambdas(g: Graph, levels) -> list:
    """Exact density increment of each level of a nested chain."""
    out, acc, prev_w = [], set(), 0.0
    for lv in levels:
        acc |= lv
        w = induced_weight(g, acc)
        out.append((w - prev_w) / len(lv))
        prev_w = w
    return out


def levels_from_loads(g: Graph, loads, tol: float = 1e-3) -> Decomposition:
    """Group nodes by descending load, splitting where neighbours differ by > ``tol``.

    Level values are recomputed from the graph when they come out strictly
    decreasing; otherwise the raw load means are reported.
    """
    if not tol > 0:
        raise GraphValidationError("tol must be > 0")
    loads = np.asarray(loads, dtype=np.float64)
    order = np.lexsort((np.arange(len(loads)), -loads))
    groups, current = [], [int(order[0])]
    for a, b in zip(order[:-1], order[1:]):
        if loads[a] - loads[b] > tol:
            groups.append(current)
            current = []
        current.append(int(b))
    groups.append(current)
    levels = tuple(frozenset(gr) for gr in groups)
    means = tuple(float(loads[gr].mean()) for gr in groups)
    exact = level_lambdas(g, levels)
    lambdas = exact if all(a > b for a, b in zip(exact, exact[1:])) else list(means)
    return Decomposition(levels, tuple(lambdas), means)


def group_levels(g: Graph, d: Distribution, tol: float = 1e-3) -> Decomposition:
    """Decomposition read off a (converged) distribution's loads."""
    return levels_from_loads(g, np.asarray(d.loads, dtype=np.float64), tol)


def verify_one_way(g: Graph, d: Distribution, dec: Decomposition, tol: float = 1e-6) -> bool:
    """Check that edges between levels are held only by the outer-level endpoint."""
    lvl = dec.labels(g.n_nodes)
    lu, lv = lvl[g.edges_u], lvl[g.edges_v]
    share_u = np.asarray(d.share_u, dtype=np.float64)
    share_v = g.weights - share_u
    # lower level index = denser level = higher load
    bad_u = (lu < lv) & (share_u > tol)
    bad_v = (lv < lu) & (share_v > tol)
    return not bool(np.any(bad_u | bad_v))


def dks_upper_bound(dec: Decomposition, k: int) -> float:
    """Upper bound on the density of any ``k``-node subgraph.

    Sum of the ``k`` largest per-node level values, divided by ``k``; exact
    when ``k`` is a cumulative level size.
    """
    sizes = dec.sizes
    if not 1 <= k <= sizes[-1]:
        raise GraphValidationError(f"k must lie in [1, {sizes[-1]}]")
    total, prev = 0.0, 0
    for lam, size in zip(dec.lambdas, sizes):
        take = min(size, k) - prev
        total += lam * take
        prev += take
        if prev == k:
            break
    return total / k
