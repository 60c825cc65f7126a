"""Command-line interface: ``densub <subcommand> ...``.

Exit status is 0 on success, 2 on invalid input and 3 when ``verify``
finds a certification failure or an oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bench import SOLVERS as BENCH_SOLVERS
from .bench import bench, write_trace
from .corpus import sparse_random_graph, verification_corpus
from .decomposition import dks_upper_bound, group_levels
from .estimators import SOLVER_NAMES, run_solver
from .exact import brute_force_densest, exact_ldd, maxflow_densest
from .exceptions import GraphValidationError
from .graph import Graph, load_edge_list
from .lowd import solve
from .metrics import relative_error
from .pruning import prune, prune_unweighted

log = logging.getLogger("densub")

EXIT_INVALID = 2
EXIT_UNCERTIFIED = 3


def _load(args) -> Graph:
    if getattr(args, "random", None):
        try:
            n, m = (int(x) for x in args.random.split(":"))
        except ValueError:
            raise GraphValidationError("--random expects N:M") from None
        return sparse_random_graph(n, m, seed=args.seed, weighted=args.weighted)
    if args.graph is None:
        raise GraphValidationError("no graph given")
    src = sys.stdin.buffer if args.graph == "-" else args.graph
    if src is not sys.stdin.buffer and not Path(src).exists():
        raise GraphValidationError(f"no such file: {src}")
    return load_edge_list(src, weighted=args.weighted)


def _ids(g, nodes) -> str:
    return " ".join(str(x) for x in g.to_labels(nodes))


def cmd_prune(args, out):
    g = _load(args)
    if g.is_unweighted and args.max_rounds is None:
        res = prune_unweighted(g)
    else:
        res = prune(g, max_rounds=args.max_rounds)
    print(f"survivors={res.size}", file=out)
    print(f"delta={res.delta!r}", file=out)
    print(f"rounds={res.rounds}", file=out)
    if args.rounds_csv:
        with open(args.rounds_csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["round", "deleted", "density_before"])
            for i, (k, dens) in enumerate(zip(res.deleted_per_round, res.deltas), start=1):
                w.writerow([i, k, repr(dens)])
    return 0


def cmd_dsp(args, out):
    g = _load(args)
    work, back = g, np.arange(g.n_nodes)
    if args.prune:
        keep = np.array(sorted(prune(g).survivors))
        work, back = g.subgraph(keep), keep
        log.info("pruned %d -> %d nodes", g.n_nodes, work.n_nodes)
    if args.trace and args.solver == "lowd":
        res, _, trace = solve(work, args.iters, certify=args.certify)
        # no oracle here; relative error is measured against the final best density
        final = trace[-1, 2]
        rows = [(int(r[0]), 0, r[1], r[2], r[3], relative_error(final, r[2])) for r in trace]
        write_trace(rows, args.trace)
    else:
        res, _ = run_solver(work, args.solver, args.iters, args.certify)
    members = back[sorted(res.members)]
    print(f"density={res.density!r}", file=out)
    print(f"size={res.size}", file=out)
    print(f"sweeps={res.sweeps}", file=out)
    print(f"certified={str(res.certified).lower()}", file=out)
    print(f"nodes={_ids(g, members)}", file=out)
    return 0


def _decompose(args, g):
    if args.exact:
        return exact_ldd(g)
    _, d, _ = solve(g, args.iters, certify=False, plateau_tol=0.0)
    return group_levels(g, d, args.tol)


def cmd_ldd(args, out):
    g = _load(args)
    if not args.tol > 0:
        raise GraphValidationError("--tol must be > 0")
    dec = _decompose(args, g)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["level_index", "lambda", "size", "node_ids"])
    for i, (lv, lam) in enumerate(zip(dec.levels, dec.lambdas), start=1):
        w.writerow([i, repr(float(lam)), len(lv), _ids(g, lv)])
    return 0


def cmd_dks_bound(args, out):
    g = _load(args)
    dec = _decompose(args, g)
    print(f"k={args.k}", file=out)
    print(f"upper_bound={dks_upper_bound(dec, args.k)!r}", file=out)
    return 0


def cmd_verify(args, out):
    oracle = {"brute": brute_force_densest, "flow": maxflow_densest}[args.oracle]
    if args.graph is not None:
        graphs = [(args.graph, _load(args))]
    else:
        graphs = verification_corpus(seed=args.seed, count=args.count)
    failures = 0
    for name, g in graphs:
        truth = oracle(g)
        res, _, _ = solve(g, args.iters, certify=True)
        if g.is_unweighted:
            ok = res.certified and res.density == truth.density
        else:
            ok = abs(res.density - truth.density) <= 1e-6 * truth.density
        failures += not ok
        print(f"{name},{truth.density!r},{res.density!r},{res.sweeps},"
              f"{str(res.certified).lower()},{'ok' if ok else 'FAIL'}", file=out)
    print(f"checked={len(graphs)} failures={failures}", file=out)
    return EXIT_UNCERTIFIED if failures else 0


def cmd_bench(args, out):
    g = _load(args)
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    bad = [s for s in solvers if s not in BENCH_SOLVERS]
    if bad:
        raise GraphValidationError(f"unknown solver(s) {', '.join(bad)}")
    res = bench(g, solvers, args.iters, args.out, prune=args.prune, timing=not args.no_timing)
    print(f"rho_star={res['rho_star']!r}", file=out)
    for k, v in res["info"].items():
        print(f"{k}={v}", file=out)
    for row in res["summary"]:
        print(",".join(f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}" for k, v in row.items()), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="densub", description="Densest subgraph and locally-dense decomposition tools.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp, optional=False):
        sp.add_argument("graph", nargs="?" if optional else None, help="edge-list file, '-' for stdin")
        sp.add_argument("--weighted", action="store_true", help="read a third column as edge weight")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("prune", help="density lower-bound pruning")
    graph_args(sp)
    sp.add_argument("--max-rounds", type=int, default=None)
    sp.add_argument("--rounds-csv", default=None, help="write per-round deletion counts here")
    sp.set_defaults(func=cmd_prune)

    sp = sub.add_parser("dsp", help="find a densest subgraph")
    graph_args(sp)
    sp.add_argument("--solver", choices=SOLVER_NAMES, default="lowd")
    sp.add_argument("--iters", type=int, default=1000)
    sp.add_argument("--certify", action="store_true")
    sp.add_argument("--prune", action="store_true")
    sp.add_argument("--trace", default=None, help="CSV trace path (lowd only)")
    sp.set_defaults(func=cmd_dsp)

    for name, fn in (("ldd", cmd_ldd), ("dks-bound", cmd_dks_bound)):
        sp = sub.add_parser(name, help="locally-dense decomposition" if name == "ldd" else "DkS density upper bound")
        graph_args(sp)
        sp.add_argument("--iters", type=int, default=10000)
        sp.add_argument("--tol", type=float, default=1e-3)
        sp.add_argument("--exact", action="store_true")
        if name == "dks-bound":
            sp.add_argument("--k", type=int, required=True)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("verify", help="check certified LOWD results against an exact oracle")
    graph_args(sp, optional=True)
    sp.add_argument("--oracle", choices=("brute", "flow"), default="brute")
    sp.add_argument("--count", type=int, default=240)
    sp.add_argument("--iters", type=int, default=10000)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="convergence traces for the iterative solvers")
    graph_args(sp, optional=True)
    sp.add_argument("--random", default=None, metavar="N:M", help="use a seeded random graph instead of a file")
    sp.add_argument("--solvers", default=",".join(BENCH_SOLVERS))
    sp.add_argument("--iters", type=int, default=100)
    sp.add_argument("--prune", action="store_true")
    sp.add_argument("--out", default="bench_out")
    sp.add_argument("--no-timing", action="store_true", help="write 0 for elapsed_ns (byte-stable output)")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "iters", 0) is not None and getattr(args, "iters", 0) < 0:
        print("error: --iters must be >= 0", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args, out)
    except (GraphValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
