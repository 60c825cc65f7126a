"""Density lower-bound pruning.

Any node whose degree inside the remaining graph ``H`` is below the density
of ``H`` cannot belong to a densest subgraph. Removing all such nodes raises
the density of ``H``, so the rule is applied until no node violates it. The
survivors are the maximal ``delta``-core of the input, with ``delta`` their
own density.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import GraphValidationError
from .graph import Graph, induced_degrees

__all__ = ["PruneResult", "BucketQueue", "prune", "prune_unweighted", "is_delta_core"]


@dataclass(frozen=True)
class PruneResult:
    """Outcome of pruning.

    ``rounds`` counts every scan including the final one that deletes
    nothing, so ``deleted_per_round`` ends with 0 unless a round cap hit.
    ``deltas[i]`` is the density of the remaining graph before round ``i+1``;
    its last entry is ``delta``.
    """

    survivors: frozenset
    delta: float
    rounds: int
    deleted_per_round: tuple
    deltas: tuple
    labels: tuple = field(repr=False, default=())

    @property
    def size(self) -> int:
        return len(self.survivors)


def _incidences(g: Graph, nodes: np.ndarray):
    """(owner, other end, edge id) for every incidence of ``nodes``."""
    starts = g.indptr[nodes]
    lengths = g.indptr[nodes + 1] - starts
    total = int(lengths.sum())
    offsets = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
    pos = offsets + np.arange(total)
    return np.repeat(nodes, lengths), g.adj_nodes[pos], g.adj_edges[pos]


def _result(g, alive, rounds, deleted, deltas):
    members = np.flatnonzero(alive)
    kept = alive[g.edges_u] & alive[g.edges_v]
    delta = float(g.weights[kept].sum()) / len(members)
    deltas[-1] = delta
    return PruneResult(
        survivors=frozenset(int(v) for v in members),
        delta=delta,
        rounds=rounds,
        deleted_per_round=tuple(deleted),
        deltas=tuple(deltas),
        labels=tuple(int(x) for x in g.labels[members]),
    )


def prune(g: Graph, max_rounds: int | None = None) -> PruneResult:
    """Delete, round by round, every node with degree below the current density.

    Works on weighted and unweighted graphs in ``O(M + T*N)`` for ``T``
    rounds. ``max_rounds`` caps the number of deleting rounds; the result is
    then a valid superset of the densest subgraph but not necessarily a
    ``delta``-core.
    """
    alive = np.ones(g.n_nodes, dtype=bool)
    deg = np.array(g.weighted_degree, dtype=np.float64)
    n, weight = g.n_nodes, g.total_weight
    rounds, deleted, deltas = 0, [], [weight / n]
    while True:
        if max_rounds is not None and rounds >= max_rounds:
            break
        rounds += 1
        # deg < W/n, multiplied out so integer weights compare exactly
        doomed = np.flatnonzero(alive & (deg * n < weight))
        deleted.append(len(doomed))
        if len(doomed) == 0:
            break
        if len(doomed) == n:
            raise AssertionError("pruning removed every node; density bookkeeping is broken")
        _, other, edge = _incidences(g, doomed)
        was_alive = alive[other]
        alive[doomed] = False
        survivor_side = alive[other]
        np.subtract.at(deg, other[survivor_side], g.weights[edge[survivor_side]])
        # edges with both ends doomed show up twice, keep one copy
        gone = np.unique(edge[was_alive & ~survivor_side])
        weight -= float(g.weights[edge[survivor_side]].sum() + g.weights[gone].sum())
        n -= len(doomed)
        deltas.append(weight / n)
    return _result(g, alive, rounds, deleted, deltas)


class BucketQueue:
    """Nodes bucketed by integer degree, for unweighted pruning.

    A node whose degree falls below the current parking level is stored in
    the parking bucket instead of its true-degree bucket; such nodes are
    always deleted in the next round.
    """

    def __init__(self, degrees):
        self.degree = [int(d) for d in degrees]
        self.buckets = [set() for _ in range(max(self.degree, default=0) + 1)]
        self.where = list(self.degree)
        for v, d in enumerate(self.degree):
            self.buckets[d].add(v)

    def take_range(self, lo: int, hi: int) -> list:
        """Pop every node stored in buckets ``lo..hi``."""
        out = []
        for b in range(lo, min(hi, len(self.buckets) - 1) + 1):
            out.extend(sorted(self.buckets[b]))
            self.buckets[b].clear()
        for v in out:
            self.where[v] = -1
        return out

    def decrement(self, v: int, park: int) -> None:
        self.degree[v] -= 1
        target = max(self.degree[v], park)
        if target != self.where[v]:
            self.buckets[self.where[v]].discard(v)
            self.buckets[target].add(v)
            self.where[v] = target

    def check(self) -> None:
        """Assert every live node sits in exactly one bucket."""
        seen = {}
        for b, members in enumerate(self.buckets):
            for v in members:
                assert v not in seen, f"node {v} in two buckets"
                seen[v] = b
        for v, b in seen.items():
            assert self.where[v] == b
            assert self.degree[v] == b or self.degree[v] < b


def prune_unweighted(g: Graph) -> PruneResult:
    """Counting-sort pruning for unit-weight graphs, ``O(M + N)``.

    Same survivors, ``delta`` and round log as :func:`prune`. Each round scans
    buckets from the floor of the previous density bound (where parked
    nodes wait) up to the largest degree strictly below the new bound.
    """
    if not g.is_unweighted:
        raise GraphValidationError("prune_unweighted requires unit edge weights")
    q = BucketQueue(g.weighted_degree)
    alive = np.ones(g.n_nodes, dtype=bool)
    this_round = np.zeros(g.n_nodes, dtype=np.int64)
    n, m = g.n_nodes, g.n_edges
    park = 0
    rounds, deleted, deltas = 0, [], [m / n]
    indptr, adj = g.indptr, g.adj_nodes
    while True:
        rounds += 1
        # largest integer degree strictly below m/n
        hi = (m - 1) // n
        doomed = q.take_range(park, hi)
        deleted.append(len(doomed))
        if not doomed:
            break
        if len(doomed) == n:
            raise AssertionError("pruning removed every node; density bookkeeping is broken")
        next_park = m // n
        for x in doomed:
            alive[x] = False
            this_round[x] = rounds
        for x in doomed:
            for y in adj[indptr[x] : indptr[x + 1]]:
                if alive[y]:
                    m -= 1
                    q.decrement(int(y), next_park)
                elif this_round[y] == rounds and y > x:
                    # both ends doomed this round, count the edge once
                    m -= 1
        n -= len(doomed)
        park = next_park
        deltas.append(m / n)
    return _result(g, alive, rounds, deleted, deltas)


def is_delta_core(g: Graph, s, delta: float) -> bool:
    """True iff every node of ``s`` has induced degree at least ``delta``."""
    return all(d >= delta for d in induced_degrees(g, s).values())
