"""Seeded random graphs and small named graphs used for verification."""

from __future__ import annotations

import numpy as np

from .graph import Graph

__all__ = [
    "random_graph",
    "sparse_random_graph",
    "verification_corpus",
    "complete",
    "k4_plus_pendant",
    "star",
    "plateau_path",
    "two_triangles",
]


def random_graph(n: int, p: float, weighted: bool, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p) on nodes ``0..n-1``; weights uniform on (0, 2].

    Redraws until at least one edge exists. Isolated nodes are kept.
    """
    iu, iv = np.triu_indices(n, k=1)
    while True:
        keep = rng.random(len(iu)) < p
        if keep.any():
            break
    w = 2.0 - rng.uniform(0.0, 2.0, size=int(keep.sum())) if weighted else None
    return Graph.from_edges(np.column_stack([iu[keep], iv[keep]]), w, n_nodes=n)


def sparse_random_graph(n: int, n_edges: int, seed: int = 0, weighted: bool = False) -> Graph:
    """G(n, m)-style graph: ``n_edges`` random distinct pairs."""
    rng = np.random.default_rng(seed)
    seen, pairs = set(), []
    while len(pairs) < n_edges:
        a, b = (int(x) for x in rng.integers(0, n, size=2))
        key = (min(a, b), max(a, b))
        if a != b and key not in seen:
            seen.add(key)
            pairs.append(key)
    w = 2.0 - rng.uniform(0.0, 2.0, size=n_edges) if weighted else None
    return Graph.from_edges(np.array(pairs), w, n_nodes=n)


def verification_corpus(seed: int = 0, count: int = 240, n_range=(3, 10), probs=(0.3, 0.5, 0.7)):
    """Deterministic list of ``(name, Graph)``, alternating unweighted/weighted."""
    rng = np.random.default_rng(seed)
    lo, hi = n_range
    out = []
    for i in range(count):
        n = lo + i % (hi - lo + 1)
        p = probs[(i // 2) % len(probs)]
        weighted = bool(i % 2)
        g = random_graph(n, p, weighted, rng)
        out.append((f"g{i:03d}_n{n}_p{p}_{'w' if weighted else 'u'}", g))
    return out


def complete(n: int) -> Graph:
    iu, iv = np.triu_indices(n, k=1)
    return Graph.from_edges(np.column_stack([iu, iv]), n_nodes=n)


def k4_plus_pendant() -> Graph:
    """K4 on nodes 0..3 plus the pendant edge 0-4."""
    return Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)], n_nodes=5)


def star(leaves: int) -> Graph:
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], n_nodes=leaves + 1)


def plateau_path() -> Graph:
    """Path a-b-c-d plus chord b-d; first greedy removal leaves density at 1."""
    return Graph.from_edges([(0, 1), (1, 2), (2, 3), (1, 3)], n_nodes=4)


def two_triangles() -> Graph:
    return Graph.from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], n_nodes=6)
