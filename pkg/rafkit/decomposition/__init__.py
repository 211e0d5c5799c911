"""
Primal graphs, tree decompositions and PACE files.
"""

from .graph import primal_graph, qbf_primal_graph
from .pace import read_td, write_pace_graph, write_td
from .td import Heuristic, TreeDecomposition, clausified_td, heuristic_td, is_normalized, node_conditions, normalize_td, validate_td

__all__ = [
    "Heuristic",
    "TreeDecomposition",
    "clausified_td",
    "heuristic_td",
    "is_normalized",
    "node_conditions",
    "normalize_td",
    "primal_graph",
    "qbf_primal_graph",
    "read_td",
    "validate_td",
    "write_pace_graph",
    "write_td",
]
