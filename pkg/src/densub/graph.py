"""Immutable undirected weighted graph and density primitives.

Node ids are dense ``0..N-1``; the original ids from the input are kept in
``Graph.labels`` so results can be reported in the caller's id space.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

from .exceptions import EdgeListParseError, GraphValidationError

__all__ = [
    "Graph",
    "SubgraphView",
    "load_edge_list",
    "write_edge_list",
    "density",
    "induced_degrees",
    "induced_weight",
]


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected graph with positive edge weights in adjacency-array form.

    Build instances with :meth:`from_edges` or :func:`load_edge_list`; the
    constructor trusts its arguments.

    Attributes
    ----------
    n_nodes : int
    edges_u, edges_v : ndarray of int64, shape (M,)
        Endpoints of each edge, ``edges_u[e] < edges_v[e]`` is *not* assumed.
    weights : ndarray of float64, shape (M,)
    indptr, adj_nodes, adj_edges : ndarray of int64
        CSR incidence index: the incidences of node ``v`` are
        ``adj_nodes[indptr[v]:indptr[v+1]]`` (opposite endpoints) and
        ``adj_edges[...]`` (edge ids).
    labels : ndarray of int64, shape (N,)
        Original id of every node.
    """

    n_nodes: int
    edges_u: np.ndarray
    edges_v: np.ndarray
    weights: np.ndarray
    indptr: np.ndarray
    adj_nodes: np.ndarray
    adj_edges: np.ndarray
    labels: np.ndarray
    weighted_degree: np.ndarray = field(repr=False)
    total_weight: float
    is_unweighted: bool

    @classmethod
    def from_edges(cls, edges, weights=None, n_nodes=None, labels=None) -> "Graph":
        """Canonicalize an edge list into a :class:`Graph`.

        Self-loops are dropped, and of several edges joining the same
        unordered pair only the first is kept. When ``n_nodes`` is None the
        ids are arbitrary non-negative integers remapped to ``0..N-1`` in
        first-seen order; otherwise they must already lie in
        ``range(n_nodes)`` (isolated nodes allowed).
        """
        pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if weights is None:
            w = np.ones(len(pairs), dtype=np.float64)
        else:
            w = np.asarray(weights, dtype=np.float64).reshape(-1)
            if len(w) != len(pairs):
                raise GraphValidationError("weights and edges differ in length")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise GraphValidationError("edge weights must be finite and > 0")

        keep = pairs[:, 0] != pairs[:, 1]
        pairs, w = pairs[keep], w[keep]
        if len(pairs):
            lo = np.minimum(pairs[:, 0], pairs[:, 1])
            hi = np.maximum(pairs[:, 0], pairs[:, 1])
            _, first = np.unique(np.stack([lo, hi], axis=1), axis=0, return_index=True)
            first.sort()
            pairs, w = pairs[first], w[first]
        if len(pairs) == 0:
            raise GraphValidationError("graph has no edges")

        if n_nodes is None:
            flat = pairs.reshape(-1)
            uniq, first_pos, inverse = np.unique(flat, return_index=True, return_inverse=True)
            order = np.argsort(first_pos, kind="stable")
            rank = np.empty_like(order)
            rank[order] = np.arange(len(order))
            pairs = rank[inverse].reshape(-1, 2)
            n_nodes = len(uniq)
            if labels is None:
                labels = uniq[order]
        else:
            n_nodes = int(n_nodes)
            if pairs.min() < 0 or pairs.max() >= n_nodes:
                raise GraphValidationError("node id out of range(n_nodes)")
            if labels is None:
                labels = np.arange(n_nodes, dtype=np.int64)
        labels = np.asarray(labels, dtype=np.int64)
        if len(labels) != n_nodes:
            raise GraphValidationError("labels must have one entry per node")
        return cls._build(n_nodes, pairs[:, 0], pairs[:, 1], w, labels)

    @classmethod
    def _build(cls, n, eu, ev, w, labels) -> "Graph":
        m = len(eu)
        ends = np.concatenate([eu, ev])
        others = np.concatenate([ev, eu])
        eids = np.concatenate([np.arange(m), np.arange(m)])
        order = np.lexsort((eids, ends))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(ends, minlength=n), out=indptr[1:])
        wdeg = np.bincount(eu, weights=w, minlength=n) + np.bincount(ev, weights=w, minlength=n)
        return cls(
            n_nodes=int(n),
            edges_u=_frozen(eu.astype(np.int64)),
            edges_v=_frozen(ev.astype(np.int64)),
            weights=_frozen(w.astype(np.float64)),
            indptr=_frozen(indptr),
            adj_nodes=_frozen(others[order].astype(np.int64)),
            adj_edges=_frozen(eids[order].astype(np.int64)),
            labels=_frozen(labels),
            weighted_degree=_frozen(wdeg),
            total_weight=float(w.sum()),
            is_unweighted=bool(np.all(w == 1.0)),
        )

    @property
    def n_edges(self) -> int:
        return len(self.edges_u)

    def neighbors(self, v):
        return self.adj_nodes[self.indptr[v] : self.indptr[v + 1]]

    def incident_edges(self, v):
        return self.adj_edges[self.indptr[v] : self.indptr[v + 1]]

    def mask(self, nodes) -> np.ndarray:
        """Boolean membership vector for a node-id collection."""
        m = np.zeros(self.n_nodes, dtype=bool)
        idx = np.fromiter(nodes, dtype=np.int64) if not isinstance(nodes, np.ndarray) else nodes
        if len(idx) and (idx.min() < 0 or idx.max() >= self.n_nodes):
            raise GraphValidationError("node id out of range")
        m[idx] = True
        return m

    def subgraph(self, nodes) -> "Graph":
        """Induced subgraph on ``nodes``; labels carry over, ids are compacted."""
        keep = self.mask(nodes)
        sel = keep[self.edges_u] & keep[self.edges_v]
        remap = np.cumsum(keep) - 1
        return self._build(
            int(keep.sum()),
            remap[self.edges_u[sel]],
            remap[self.edges_v[sel]],
            np.array(self.weights[sel]),
            np.array(self.labels[keep]),
        )

    def view(self, nodes) -> "SubgraphView":
        members = frozenset(int(v) for v in nodes)
        degs = induced_degrees(self, members)
        return SubgraphView(self, members, induced_weight(self, members), degs)

    def to_labels(self, nodes) -> list:
        """Original ids of internal node ids, sorted."""
        return sorted(int(self.labels[v]) for v in nodes)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n_nodes == other.n_nodes
            and np.array_equal(self.edges_u, other.edges_u)
            and np.array_equal(self.edges_v, other.edges_v)
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.labels, other.labels)
        )

    __hash__ = None


@dataclass(frozen=True)
class SubgraphView:
    parent: Graph
    members: frozenset
    induced_weight: float
    induced_degree: dict

    @property
    def density(self) -> float:
        return self.induced_weight / len(self.members)


def _edge_mask(g: Graph, s) -> np.ndarray:
    m = g.mask(s)
    return m[g.edges_u] & m[g.edges_v]


def induced_weight(g: Graph, s) -> float:
    """Total weight of edges with both endpoints in ``s``."""
    return float(g.weights[_edge_mask(g, s)].sum())


def density(g: Graph, s) -> float:
    """Induced edge weight of ``s`` divided by ``|s|``."""
    s = list(s)
    if not s:
        raise GraphValidationError("density of an empty node set is undefined")
    return induced_weight(g, s) / len(set(s))


def induced_degrees(g: Graph, s) -> dict:
    """Weighted degree of every member of ``s`` inside the subgraph it induces."""
    s = list(s)
    if not s:
        return {}
    sel = _edge_mask(g, s)
    w = g.weights[sel]
    deg = np.bincount(g.edges_u[sel], weights=w, minlength=g.n_nodes)
    deg += np.bincount(g.edges_v[sel], weights=w, minlength=g.n_nodes)
    return {int(v): float(deg[v]) for v in s}


def _parse_lines(lines: Iterable[str], weighted: bool):
    us, vs, ws = [], [], []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListParseError(lineno, line, "expected 'u v' or 'u v w'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(lineno, line, "node ids must be integers") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(lineno, line, "node ids must be non-negative")
        w = 1.0
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise EdgeListParseError(lineno, line, "weight is not a number") from None
            if weighted and not (np.isfinite(w) and w > 0):
                raise GraphValidationError(f"line {lineno}: weight must be positive, got {parts[2]}")
        us.append(u)
        vs.append(v)
        ws.append(w if weighted else 1.0)
    return us, vs, ws


def load_edge_list(stream: IO | str | bytes, weighted: bool = False) -> Graph:
    """Read a whitespace-separated edge list.

    ``stream`` may be a text or binary file object, a path, or the raw
    contents as ``bytes``. Lines starting with ``#`` or ``%`` are comments.
    Direction is ignored, and unless ``weighted`` is set every weight is 1.
    """
    if isinstance(stream, bytes):
        stream = io.StringIO(stream.decode())
    if isinstance(stream, str):
        with open(stream) as fh:
            us, vs, ws = _parse_lines(fh, weighted)
    else:
        lines = (ln.decode() if isinstance(ln, bytes) else ln for ln in stream)
        us, vs, ws = _parse_lines(lines, weighted)
    if not us:
        raise GraphValidationError("edge list contains no edges")
    return Graph.from_edges(np.column_stack([us, vs]), ws)


def write_edge_list(g: Graph, stream: IO[str], weighted: bool | None = None) -> None:
    """Serialize ``g`` with original ids; inverse of :func:`load_edge_list`."""
    if weighted is None:
        weighted = not g.is_unweighted
    lab = g.labels
    for u, v, w in zip(g.edges_u, g.edges_v, g.weights):
        if weighted:
            stream.write(f"{lab[u]} {lab[v]} {float(w)!r}\n")
        else:
            stream.write(f"{lab[u]} {lab[v]}\n")
