"""Coercion of user inputs into :class:`~densub.graph.Graph`."""

from __future__ import annotations

import numbers

import numpy as np
import scipy.sparse as sp

from .exceptions import GraphValidationError
from .graph import Graph

__all__ = ["check_graph", "check_positive_int", "check_positive_float"]


def check_graph(X, weighted: bool | None = None) -> Graph:
    """Accept a Graph, an edge array or an adjacency matrix.

    * :class:`Graph` is returned unchanged (``weighted=False`` drops weights).
    * 2-D array with 2 or 3 columns: rows ``(u, v)`` or ``(u, v, w)`` with
      ids in ``0..max``; ids are kept, so unlisted ids become isolated nodes.
    * scipy sparse matrix, or any other square 2-D array: adjacency; entry
      ``(i, j)`` is an edge of that weight, direction ignored.

    ``weighted=None`` keeps whatever weights the input carries.
    """
    if isinstance(X, Graph):
        g = X
        if weighted is False and not g.is_unweighted:
            g = Graph.from_edges(np.column_stack([g.edges_u, g.edges_v]), n_nodes=g.n_nodes, labels=g.labels)
        return g
    if sp.issparse(X):
        A = sp.coo_array(X)
        if A.shape[0] != A.shape[1]:
            raise GraphValidationError(f"adjacency matrix must be square, got {A.shape}")
        return _from_triplets(A.row, A.col, A.data, A.shape[0], weighted)
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise GraphValidationError(f"expected a 2-D edge array or adjacency, got shape {arr.shape}")
    if arr.shape[1] in (2, 3):
        if len(arr) == 0:
            raise GraphValidationError("edge array is empty")
        ids = arr[:, :2]
        if not np.all(np.equal(np.mod(ids, 1), 0)) or ids.min() < 0:
            raise GraphValidationError("node ids must be non-negative integers")
        ids = ids.astype(np.int64)
        w = arr[:, 2].astype(np.float64) if arr.shape[1] == 3 else np.ones(len(arr))
        return _from_triplets(ids[:, 0], ids[:, 1], w, int(ids.max()) + 1, weighted)
    if arr.shape[0] != arr.shape[1]:
        raise GraphValidationError(f"adjacency matrix must be square, got {arr.shape}")
    r, c = np.nonzero(arr)
    return _from_triplets(r, c, arr[r, c], arr.shape[0], weighted)


def _from_triplets(row, col, data, n, weighted):
    data = np.asarray(data, dtype=np.float64)
    keep = data != 0
    row, col, data = row[keep], col[keep], data[keep]
    pairs = np.column_stack([row, col])
    if weighted is False:
        return Graph.from_edges(pairs, n_nodes=n)
    return Graph.from_edges(pairs, data, n_nodes=n)


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if not isinstance(value, numbers.Integral) or isinstance(value, bool) or value < minimum:
        raise GraphValidationError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_positive_float(value, name: str) -> float:
    if not isinstance(value, numbers.Real) or not value > 0:
        raise GraphValidationError(f"{name} must be a positive number, got {value!r}")
    return float(value)
