"""Convergence traces for the iterative solvers, written as CSV.

All solvers start from the equal edge split. One trace row is emitted per
sweep (per round for Greedy++), row 0 being the initial state.
"""

from __future__ import annotations

import csv
import logging
import time
from pathlib import Path

import numpy as np

from .convex import frank_wolfe_sweep, mwu_sweep
from .exact import maxflow_densest
from .graph import Graph
from .lowd import dual_objective, extract_densest, init_distribution, lowd_sweep, qp_objective
from .metrics import qp_error, relative_error
from .peeling import greedy_pp_rounds
from .pruning import prune as prune_graph

__all__ = ["SOLVERS", "CSV_COLUMNS", "solver_trace", "bench", "write_trace"]

log = logging.getLogger(__name__)

SOLVERS = ("lowd", "greedypp", "fw", "mwu")
CSV_COLUMNS = ("sweep", "elapsed_ns", "dual_D", "best_density", "qp_objective", "relative_error")


def _clock(timing):
    if not timing:
        return lambda: 0
    start = time.perf_counter_ns()
    return lambda: time.perf_counter_ns() - start


def solver_trace(g: Graph, solver: str, sweeps: int, rho_star: float, timing: bool = True) -> list:
    """Trace rows for one solver; see :data:`CSV_COLUMNS`."""
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; choose from {', '.join(SOLVERS)}")
    elapsed = _clock(timing)
    d = init_distribution(g)
    best = extract_densest(g, d).density
    rows = [(0, elapsed(), dual_objective(d), best, qp_objective(d), relative_error(rho_star, best))]
    if solver == "greedypp":
        if sweeps:
            for r, res, loads in greedy_pp_rounds(g, sweeps):
                # averaged carried loads form a feasible edge split
                avg = loads / r
                best = max(best, res.density)
                rows.append((r, elapsed(), float(avg.max()), best, float(avg @ avg),
                             relative_error(rho_star, best)))
        return rows
    step = {"lowd": lambda t: lowd_sweep(d, g), "fw": lambda t: frank_wolfe_sweep(d, g, t),
            "mwu": lambda t: mwu_sweep(d, g, t)}[solver]
    for t in range(1, sweeps + 1):
        step(t)
        best = max(best, extract_densest(g, d).density)
        rows.append((t, elapsed(), dual_objective(d), best, qp_objective(d), relative_error(rho_star, best)))
    return rows


def write_trace(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow([int(row[0]), int(row[1])] + [repr(float(x)) for x in row[2:]])


def bench(g: Graph, solvers=SOLVERS, sweeps: int = 100, out_dir=None, prune: bool = False,
          timing: bool = True, rho_star: float | None = None) -> dict:
    """Trace every solver on ``g`` and summarize.

    With ``out_dir`` set, writes ``<solver>.csv`` per solver plus
    ``summary.csv``. The optimum density comes from the max-flow oracle
    unless given. ``qp_error`` is measured against the smallest final
    squared-load value over the solvers run.
    """
    for s in solvers:
        if s not in SOLVERS:
            raise ValueError(f"unknown solver {s!r}; choose from {', '.join(SOLVERS)}")
    info = {"nodes": g.n_nodes, "edges": g.n_edges}
    if prune:
        pr = prune_graph(g)
        g = g.subgraph(pr.survivors)
        info.update(pruned_nodes=g.n_nodes, pruned_edges=g.n_edges, prune_rounds=pr.rounds)
        log.info("pruned to %d nodes / %d edges in %d rounds", g.n_nodes, g.n_edges, pr.rounds)
    if rho_star is None:
        rho_star = maxflow_densest(g).density
    traces = {s: solver_trace(g, s, sweeps, rho_star, timing) for s in solvers}
    qp_best = min(rows[-1][4] for rows in traces.values())
    summary = []
    for s, rows in traces.items():
        arr = np.array(rows, dtype=np.float64)
        hit = np.flatnonzero(arr[:, 5] == 0.0)
        summary.append({
            "solver": s,
            "sweeps": int(arr[-1, 0]),
            "elapsed_ns": int(arr[-1, 1]),
            "best_density": float(arr[-1, 3]),
            "relative_error": float(arr[-1, 5]),
            "first_exact_sweep": int(arr[hit[0], 0]) if len(hit) else -1,
            "final_qp": float(arr[-1, 4]),
            "qp_error": qp_error(float(arr[-1, 4]), qp_best),
        })
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for s, rows in traces.items():
            write_trace(rows, out / f"{s}.csv")
        with open(out / "summary.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(summary[0]), lineterminator="\n")
            w.writeheader()
            for row in summary:
                w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return {"rho_star": rho_star, "info": info, "traces": traces, "summary": summary}
