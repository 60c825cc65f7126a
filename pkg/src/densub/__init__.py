"""Densest subgraph search and locally-dense decomposition.

LOWD iterative weight redistribution with an optimality certificate,
counting-sort pruning, greedy and convex baselines, and exact oracles.
"""

from .decomposition import Decomposition, dks_upper_bound, group_levels, verify_one_way
from .estimators import DensestSubgraph, LocallyDenseDecomposition
from .exceptions import EdgeListParseError, GraphTooLargeError, GraphValidationError
from .graph import Graph, density, induced_degrees, load_edge_list, write_edge_list
from .lowd import Distribution, extract_densest, init_distribution, solve
from .pruning import PruneResult, prune, prune_unweighted
from .results import DensestResult

__version__ = "0.1.0"

__all__ = [
    "Decomposition",
    "DensestResult",
    "DensestSubgraph",
    "Distribution",
    "EdgeListParseError",
    "Graph",
    "GraphTooLargeError",
    "GraphValidationError",
    "LocallyDenseDecomposition",
    "PruneResult",
    "density",
    "dks_upper_bound",
    "extract_densest",
    "group_levels",
    "induced_degrees",
    "init_distribution",
    "load_edge_list",
    "prune",
    "prune_unweighted",
    "solve",
    "verify_one_way",
    "write_edge_list",
]
