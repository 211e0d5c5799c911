"""
Tree decompositions of encoded formulas.

Each node keeps its source bag and adds the variables it owns (its defeated, witness,
justification and subset variables), the variables of every clause or term emitted at the
node, and the reduct copies of its RC atoms. The result is checked against the primal graph
of the matrix, so a failed check points at an encoder bug.

Width bounds are linear in the width k of the (normalized) source decomposition:

    fragment  bound
    stab      4k + 3   (3k + 2 without binary nodes)
    prop      4k + 3   (3k + 2 without binary nodes)
    simple    5k + 7
    tight     5k + 4
    disj      4k + 7
"""

import logging
from typing import Dict, FrozenSet, Optional, Tuple

from ..decomposition.graph import qbf_primal_graph
from ..decomposition.td import TreeDecomposition, is_normalized, rebag, validate_td
from ..errors import DecompositionError
from ..qbf.model import QbfInstance

logger = logging.getLogger(__name__)

# fragment -> (factor, offset)
WIDTH_BOUNDS: Dict[str, Tuple[int, int]] = {
    "stab": (4, 3),
    "prop": (4, 3),
    "simple": (5, 7),
    "tight": (5, 4),
    "disj": (4, 7),
}

PATH_BOUNDS: Dict[str, Tuple[int, int]] = {
    "stab": (3, 2),
    "prop": (3, 2),
}


def width_bound(fragment: str, k: int, binary: bool = True) -> int:
    """Largest induced width allowed for a source decomposition of width k."""
    table = WIDTH_BOUNDS if binary or fragment not in PATH_BOUNDS else PATH_BOUNDS
    factor, offset = table[fragment]
    return factor * k + offset


def lift_td(
    source: TreeDecomposition, local: Dict[int, FrozenSet[str]], qbf: QbfInstance
) -> TreeDecomposition:
    """Source bags joined with the per-node encoding variables, validated on the matrix."""
    bags = {t: source.bags[t] | local.get(t, frozenset()) for t in source.bags}
    lifted = rebag(source, bags)
    validate_td(qbf_primal_graph(qbf), lifted)
    return lifted


def induced_td(encoding, source: Optional[TreeDecomposition] = None) -> TreeDecomposition:
    """Decomposition of the encoding's matrix built on ``source``.

    ``source`` defaults to the normalized decomposition the encoding was built on; any
    other tree must have the same nodes.

    Raises:
        DecompositionError: the lifted tree is not a decomposition of the matrix.
    """
    source = source or encoding.source_td
    if set(source.bags) != set(encoding.source_td.bags):
        raise DecompositionError("source decomposition has other nodes than the encoding", encoding.fragment.value)
    return lift_td(source, encoding.local_variables, encoding.qbf)


def has_binary_nodes(td: TreeDecomposition) -> bool:
    return any(len(kids) > 1 for kids in td.children.values())


def check_width(encoding) -> int:
    """Measured induced width; raises when it exceeds the fragment's bound."""
    source = encoding.source_td
    if not is_normalized(source):
        raise DecompositionError("width audit needs a normalized source decomposition", source.width)
    fragment = encoding.fragment.value
    measured = encoding.induced_td.width
    bound = width_bound(fragment, source.width, has_binary_nodes(source))
    if measured > bound:
        raise DecompositionError("induced width exceeds the bound", (fragment, source.width, measured, bound))
    logger.debug("%s: source width %d, induced width %d (bound %d)", fragment, source.width, measured, bound)
    return measured
