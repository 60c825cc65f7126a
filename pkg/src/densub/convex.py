"""Frank-Wolfe and MWU-style baselines over the same edge-split state as LOWD.

Both build the extreme point that hands each edge entirely to its less
loaded endpoint (equal loads split the edge in half) and move the current
split towards it; they differ only in the step schedule.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .lowd import Distribution, TRACE_COLUMNS, dual_objective, extract_densest, init_distribution, qp_objective

__all__ = ["extreme_point", "frank_wolfe_sweep", "mwu_sweep", "fw_step", "mwu_step", "run_baseline"]


def fw_step(t: int) -> float:
    return 2.0 / (t + 2)


def mwu_step(t: int) -> float:
    return 1.0 / (t + 1)


def extreme_point(d: Distribution) -> np.ndarray:
    """Share of each edge held by ``edges_u`` at the load-greedy vertex."""
    g = d.graph
    lu, lv = d.loads[g.edges_u], d.loads[g.edges_v]
    return np.where(lu < lv, g.weights, np.where(lu > lv, 0.0, g.weights / 2.0))


def _move(d: Distribution, gamma: float) -> Distribution:
    if d.exact:
        raise ValueError("baselines run in floating point only")
    target = extreme_point(d)
    d.share_u = (1.0 - gamma) * d.share_u + gamma * target
    d.refresh_loads()
    d.sweeps += 1
    return d


def frank_wolfe_sweep(d: Distribution, g: Graph | None = None, t: int = 1, step=fw_step) -> Distribution:
    """One Frank-Wolfe iteration with step ``step(t)``, default ``2/(t+2)``."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return _move(d, step(t))


def mwu_sweep(d: Distribution, g: Graph | None = None, t: int = 1, step=mwu_step) -> Distribution:
    """Running average of extreme points, step ``1/(t+1)`` by default."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return _move(d, step(t))


def run_baseline(g: Graph, method: str, sweeps: int):
    """Iterate ``"fw"`` or ``"mwu"`` from the equal split.

    Returns ``(best result, final distribution, trace)`` with the trace in
    the same column layout as :func:`densub.lowd.solve`.
    """
    sweep = {"fw": frank_wolfe_sweep, "mwu": mwu_sweep}[method]
    d = init_distribution(g)
    rows = []
    best = None
    for t in range(sweeps + 1):
        if t:
            sweep(d, g, t)
        r = extract_densest(g, d)
        if best is None or r.density > best.density:
            best = r
        rows.append((t, dual_objective(d), best.density, qp_objective(d)))
    trace = np.array(rows, dtype=np.float64).reshape(-1, len(TRACE_COLUMNS))
    return best, d, trace
