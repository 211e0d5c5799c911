"""
Decomposition-guided encodings for stable semantics with classical rejection conditions.

- ``encode_stab``: exists A, D. stable extensions of an AF as CNF
- ``encode_stab_simple``: adds witness variables W guiding "some condition is falsified"
  along the tree (simple conditions only mention arguments)
- ``encode_stab_prop``: exists A, D forall B; the DNF asks for a falsified clause of an
  accepted argument under every assignment of the RC atoms
"""

import logging
from typing import Dict, List, Tuple

from ..core.classify import ConditionUnit, classify_rc, condition_units, is_clausal, unit_variables
from ..core.model import AF, RAF, RcClass, RcMode
from ..decomposition.td import TreeDecomposition, hosts, node_conditions
from ..errors import UnsupportedClassError
from ..qbf.model import Quantifier
from .base import (
    Encoding,
    Family,
    Fragment,
    argument_builder,
    neg,
    pos,
    prepare_td,
    stable_core,
    unit_label,
)

logger = logging.getLogger(__name__)


def encode_stab(af: AF, td: TreeDecomposition) -> Encoding:
    """CNF whose argument projections are exactly the stable extensions of ``af``.

    Raises:
        DecompositionError: ``td`` is not a decomposition of the attack graph.
    """
    td = prepare_td(af, td)
    builder = argument_builder(Fragment.STAB, af, td)
    stable_core(builder, af)
    return builder.build([(Quantifier.EXISTS, (Family.ARGUMENT, Family.DEFEATED))])


def encode_stab_simple(raf: RAF, td: TreeDecomposition) -> Encoding:
    """Satisfiable iff the RAF with simple conditions has a stable extension.

    Raises:
        UnsupportedClassError: conditions are not simple.
        DecompositionError: ``td`` is not a decomposition of the primal graph.
    """
    if raf.mode is not RcMode.CLASSICAL or classify_rc(raf) is not RcClass.SIMPLE:
        raise UnsupportedClassError("the simple fragment needs simple rejection conditions")
    td = prepare_td(raf, td)
    builder = argument_builder(Fragment.SIMPLE, raf, td)
    stable_core(builder, raf.af)

    witness: Dict[int, str] = {}
    conditions: Dict[int, List[Tuple[ConditionUnit, str]]] = {}
    for t in td.nodes():
        witness[t] = builder.variable(Family.WITNESS, f"w__{t}", None, t)
        conditions[t] = []
        for i, unit in enumerate(node_conditions(raf, td, t)):
            w_c = builder.variable(Family.WITNESS, f"w__{t}__c{i}", unit_label(unit), t)
            conditions[t].append((unit, w_c))

    for t in td.nodes():
        below = [witness[c] for c in td.children.get(t, ())]
        builder.clause([neg(witness[t])] + [pos(w) for w in below] + [pos(w_c) for _, w_c in conditions[t]], t)
        for unit, w_c in conditions[t]:
            for lit in unit:
                builder.clause([neg(w_c), lit.negate()], t)
            builder.clause([neg(w_c)] + [pos(a) for a in hosts(raf, td, t, unit)], t)
    builder.clause([pos(witness[td.root])], td.root)

    return builder.build([(Quantifier.EXISTS, (Family.ARGUMENT, Family.DEFEATED, Family.WITNESS))])


def encode_stab_prop(raf: RAF, td: TreeDecomposition) -> Encoding:
    """True iff the RAF (classical, CNF-shaped conditions) has a stable extension.

    Raises:
        UnsupportedClassError: program mode, or a condition that is not in CNF
            (``clausify_raf`` converts them).
        DecompositionError: ``td`` is not a decomposition of the primal graph.
    """
    if raf.mode is not RcMode.CLASSICAL:
        raise UnsupportedClassError("the prop fragment needs classical rejection conditions")
    if not is_clausal(raf):
        raise UnsupportedClassError("rejection conditions must be in CNF; apply clausify_raf first")
    td = prepare_td(raf, td)
    builder = argument_builder(Fragment.PROP, raf, td)
    stable_core(builder, raf.af)

    builder.open_dnf()
    for a in raf.arguments:
        for clause in condition_units(raf, a):
            node = builder.anchor(unit_variables(clause) | {a})
            builder.term([pos(a)] + [lit.negate() for lit in clause], node)

    return builder.build(
        [
            (Quantifier.EXISTS, (Family.ARGUMENT, Family.DEFEATED)),
            (Quantifier.FORALL, (Family.RC_VARIABLE,)),
        ]
    )
