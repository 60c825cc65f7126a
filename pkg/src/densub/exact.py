"""Ground-truth solvers: exhaustive enumeration and Goldberg's max-flow search."""

from __future__ import annotations

from collections import deque
from fractions import Fraction

import numpy as np

from .decomposition import Decomposition
from .exceptions import GraphTooLargeError
from .graph import Graph, density
from .pruning import prune
from .results import DensestResult

__all__ = [
    "FlowNetwork",
    "brute_force_densest",
    "maxflow_densest",
    "exact_ldd",
    "brute_force_dks",
    "subset_weights",
]

BRUTE_FORCE_LIMIT = 20
LDD_LIMIT = 15
# relative tie tolerance for float-weighted enumeration
TIE_RTOL = 1e-12


class FlowNetwork:
    """Dinic max-flow on an adjacency-list residual graph.

    Capacities may be ints (exact) or floats; residual capacities at or
    below ``eps`` count as saturated.
    """

    def __init__(self, n: int, eps=0):
        self.n = n
        self.eps = eps
        self.head = [[] for _ in range(n)]
        self.to = []
        self.cap = []

    def add_edge(self, a: int, b: int, cap, rev_cap=0) -> None:
        self.head[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(cap)
        self.head[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(rev_cap)

    def _levels(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for a in self.head[x]:
                y = self.to[a]
                if level[y] < 0 and self.cap[a] > self.eps:
                    level[y] = level[x] + 1
                    dq.append(y)
        return level if level[t] >= 0 else None

    def _augment(self, s, t, level, it):
        # iterative DFS along the level graph; returns pushed amount
        stack, arcs = [s], []
        while stack:
            x = stack[-1]
            if x == t:
                push = min(self.cap[a] for a in arcs)
                for a in arcs:
                    self.cap[a] -= push
                    self.cap[a ^ 1] += push
                return push
            advanced = False
            while it[x] < len(self.head[x]):
                a = self.head[x][it[x]]
                y = self.to[a]
                if self.cap[a] > self.eps and level[y] == level[x] + 1:
                    stack.append(y)
                    arcs.append(a)
                    advanced = True
                    break
                it[x] += 1
            if not advanced:
                stack.pop()
                if arcs:
                    arcs.pop()
                    it[stack[-1]] += 1
                level[x] = -1
        return 0

    def max_flow(self, s: int, t: int):
        flow = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            while True:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                flow += pushed

    def reaches(self, t: int) -> list:
        """Nodes with a residual path into ``t``."""
        seen = [False] * self.n
        seen[t] = True
        dq = deque([t])
        while dq:
            y = dq.popleft()
            for a in self.head[y]:
                # arc a goes y -> x; its twin x -> y carries residual cap[a ^ 1]
                x = self.to[a]
                if not seen[x] and self.cap[a ^ 1] > self.eps:
                    seen[x] = True
                    dq.append(x)
        return seen


def _goldberg_cut(g: Graph, gamma):
    """Min cut of the density network at guess ``gamma``.

    Returns ``(cut value, reference value 2*W(V), maximal source side)``. A
    non-empty source side beats ``gamma`` iff the cut is below the reference.
    """
    n = g.n_nodes
    s, t = n, n + 1
    if g.is_unweighted:
        gamma = Fraction(gamma)
        p, q = gamma.numerator, gamma.denominator
        deg = [q * int(x) for x in g.weighted_degree]
        sink_cap, edge_cap = [2 * p] * n, [q] * g.n_edges
        ref, net = 2 * q * g.n_edges, FlowNetwork(n + 2, 0)
    else:
        deg = [float(x) for x in g.weighted_degree]
        sink_cap, edge_cap = [2.0 * float(gamma)] * n, [float(x) for x in g.weights]
        ref = 2.0 * g.total_weight
        net = FlowNetwork(n + 2, TIE_RTOL * ref)
    for v in range(n):
        net.add_edge(s, v, deg[v])
        net.add_edge(v, t, sink_cap[v])
    for e in range(g.n_edges):
        net.add_edge(int(g.edges_u[e]), int(g.edges_v[e]), edge_cap[e], edge_cap[e])
    cut = net.max_flow(s, t)
    to_sink = net.reaches(t)
    side = frozenset(v for v in range(n) if not to_sink[v])
    return cut, ref, side


def _beats(g, gamma):
    cut, ref, side = _goldberg_cut(g, gamma)
    if g.is_unweighted:
        better = cut < ref
    else:
        better = cut < ref * (1 - TIE_RTOL)
    return better and bool(side), side


def _exact_density(g, members):
    if g.is_unweighted:
        m = g.mask(members)
        return Fraction(int(np.count_nonzero(m[g.edges_u] & m[g.edges_v])), len(members))
    return density(g, members)


def maxflow_densest(g: Graph, eps=None) -> DensestResult:
    """Exact densest subgraph by binary search over min-cut density tests.

    The search interval starts at the pruning lower bound and the maximum
    weighted degree; it shrinks until narrower than ``eps`` (default
    ``1/(N(N-1))`` on unit weights, where that separates distinct
    densities). The incumbent is then tested at its own density until no
    denser set exists, and the reported set is the maximal one attaining it.
    """
    n = g.n_nodes
    pr = prune(g)
    best = pr.survivors
    if g.is_unweighted:
        lo = _exact_density(g, best)
        hi = Fraction(int(g.weighted_degree.max()))
        eps = Fraction(1, n * (n - 1)) if eps is None else Fraction(eps)
    else:
        lo = density(g, best)
        hi = float(g.weighted_degree.max())
        eps = 1e-10 * hi if eps is None else float(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    steps = 0
    while hi - lo >= eps:
        mid = (lo + hi) / 2
        better, side = _beats(g, mid)
        steps += 1
        if better:
            best = side
            lo = max(mid, _exact_density(g, side))
        else:
            hi = mid
    while True:
        better, side = _beats(g, _exact_density(g, best))
        steps += 1
        if not better:
            break
        best = side
    # at gamma = optimum the maximal min-cut source side is the maximal densest set
    _, _, side = _goldberg_cut(g, _exact_density(g, best))
    if side and _exact_density(g, side) >= _exact_density(g, best):
        best = side
    rho = density(g, best)
    return DensestResult(frozenset(best), rho, sweeps=steps, certificate_gap=0.0, certified=True)


def subset_weights(g: Graph):
    """Induced weight and size of every node subset, indexed by bitmask."""
    masks = np.arange(1 << g.n_nodes, dtype=np.int64)
    w = np.zeros(len(masks))
    for u, v, x in zip(g.edges_u, g.edges_v, g.weights):
        both = ((masks >> u) & (masks >> v) & 1).astype(bool)
        w[both] += x
    sizes = np.bitwise_count(masks).astype(np.int64)
    return w, sizes


def _check_size(g, limit):
    if g.n_nodes > limit:
        raise GraphTooLargeError(f"exhaustive search limited to {limit} nodes, graph has {g.n_nodes}")


def _argmax_maximal(values, sizes, candidates, rtol):
    top = values[candidates].max()
    if rtol:
        tied = candidates[values[candidates] >= top - rtol * abs(top)]
    else:
        tied = candidates[values[candidates] == top]
    return int(tied[np.lexsort((-values[tied], -sizes[tied]))[0]])


def _members(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def brute_force_densest(g: Graph) -> DensestResult:
    """Densest subgraph by enumerating all subsets; ties go to the largest set."""
    _check_size(g, BRUTE_FORCE_LIMIT)
    w, sizes = subset_weights(g)
    dens = np.zeros(len(w))
    dens[1:] = w[1:] / sizes[1:]
    rtol = 0.0 if g.is_unweighted else TIE_RTOL
    best = _argmax_maximal(dens, sizes, np.arange(1, len(w)), rtol)
    members = _members(best)
    return DensestResult(members, density(g, members), certificate_gap=0.0, certified=True)


def brute_force_dks(g: Graph, k: int) -> float:
    """Maximum density over subsets of exactly ``k`` nodes."""
    _check_size(g, BRUTE_FORCE_LIMIT)
    if not 1 <= k <= g.n_nodes:
        raise ValueError(f"k must lie in [1, {g.n_nodes}]")
    w, sizes = subset_weights(g)
    return float(w[sizes == k].max()) / k


def exact_ldd(g: Graph) -> Decomposition:
    """Locally-dense decomposition by enumeration.

    Each level is the largest superset of the previous chain element that
    maximizes the added weight per added node.
    """
    _check_size(g, LDD_LIMIT)
    w, sizes = subset_weights(g)
    masks = np.arange(len(w), dtype=np.int64)
    full = len(w) - 1
    rtol = 0.0 if g.is_unweighted else TIE_RTOL
    levels, lambdas = [], []
    b = 0
    while b != full:
        cand = masks[((masks & b) == b) & (masks != b)]
        gain = np.full(len(w), -np.inf)
        gain[cand] = (w[cand] - w[b]) / (sizes[cand] - sizes[b])
        nxt = _argmax_maximal(gain, sizes, cand, rtol)
        levels.append(_members(nxt & ~b))
        lambdas.append(float(gain[nxt]))
        b = nxt
    return Decomposition(tuple(levels), tuple(lambdas))
