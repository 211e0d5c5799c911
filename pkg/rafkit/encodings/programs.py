"""
Decomposition-guided encodings for stable semantics with program rejection conditions.

Tight programs (exists A, D forall B, J): an interpretation of the RC atoms is rejected when
an active rule is violated or some true atom lacks a justification; the universally
quantified J variables claim justifications along the tree and every false claim is caught
by a term.

Disjunctive programs (exists A, D forall B exists B', S, r): an interpretation is rejected
when an active rule is violated, or (flag r) a strictly smaller model B' of the reduct
exists; S tracks strictness along the tree.
"""

import itertools
import logging
from typing import Dict, List, Tuple

from ..core.classify import classify_rc, condition_units
from ..core.model import RAF, RcClass, RcMode, Rule
from ..decomposition.td import TreeDecomposition, hosts, node_conditions
from ..errors import UnsupportedClassError
from ..qbf.model import Quantifier
from .base import (
    Encoding,
    EncodingBuilder,
    Family,
    Fragment,
    argument_builder,
    neg,
    pos,
    prepare_td,
    rule_clause,
    stable_core,
)

logger = logging.getLogger(__name__)


def _violation_terms(builder: EncodingBuilder, raf: RAF) -> None:
    """a & ~l for every literal l of a rule of C(a) read as a clause."""
    builder.open_dnf()
    for a in raf.arguments:
        for rule in condition_units(raf, a):
            node = builder.anchor(rule.atoms | {a})
            builder.term([pos(a)] + [lit.negate() for lit in rule_clause(rule)], node)


def encode_stab_tight(raf: RAF, td: TreeDecomposition) -> Encoding:
    """True iff the RAF with tight program conditions has a stable extension.

    A rule justifies one of its heads only while the other heads are false, which is
    shifting h1 | h2 <- B into h1 <- B, not h2 and h2 <- B, not h1 (tight programs are
    head-cycle-free, so answer sets stay the same).

    Raises:
        UnsupportedClassError: classical mode or a non-tight program.
        DecompositionError: ``td`` is not a decomposition of the primal graph.
    """
    if raf.mode is not RcMode.ASP or classify_rc(raf) is not RcClass.TIGHT:
        raise UnsupportedClassError("the tight fragment needs tight program conditions")
    td = prepare_td(raf, td)
    builder = argument_builder(Fragment.TIGHT, raf, td)
    stable_core(builder, raf.af)
    atoms = raf.auxiliary_variables()

    justified: Dict[Tuple[str, int], str] = {}
    rules: Dict[int, List[Tuple[Rule, str]]] = {}
    for t in td.nodes():
        bag = td.bags[t]
        for x in atoms:
            if x in bag:
                justified[x, t] = builder.variable(Family.JUSTIFICATION, f"j__{x}__{t}", x, t)
        rules[t] = []
        for i, rule in enumerate(node_conditions(raf, td, t)):
            j_c = builder.variable(Family.JUSTIFICATION, f"j__{t}__c{i}", str(rule), t)
            rules[t].append((rule, j_c))

    _violation_terms(builder, raf)
    for t in td.nodes():
        bag = td.bags[t]
        for x in atoms:
            if x not in bag:
                continue
            below = [justified[x, c] for c in td.children.get(t, ()) if (x, c) in justified]
            supports = [j_c for rule, j_c in rules[t] if x in rule.head]
            builder.term([pos(justified[x, t])] + [neg(j) for j in below + supports], t)
        for rule, j_c in rules[t]:
            # shifted heads: a rule justifies one of its heads only while the others are false
            for h1, h2 in itertools.combinations(sorted(rule.head), 2):
                builder.term([pos(j_c), pos(h1), pos(h2)], t)
            for b in sorted(rule.neg_body):
                builder.term([pos(j_c), pos(b)], t)
            for y in sorted(rule.pos_body):
                builder.term([pos(j_c), neg(y)], t)
            builder.term([pos(j_c)] + [neg(a) for a in hosts(raf, td, t, rule)], t)

    last = td.last()
    for x in atoms:
        builder.term([pos(x), neg(justified[x, last[x]])], last[x])

    return builder.build(
        [
            (Quantifier.EXISTS, (Family.ARGUMENT, Family.DEFEATED)),
            (Quantifier.FORALL, (Family.RC_VARIABLE, Family.JUSTIFICATION)),
        ]
    )


def encode_stab_disj(raf: RAF, td: TreeDecomposition) -> Encoding:
    """True iff the RAF with program conditions (any class) has a stable extension.

    Argument atoms are fixed by the candidate extension, so their reduct copy is the
    argument variable itself.

    Raises:
        UnsupportedClassError: classical mode.
        DecompositionError: ``td`` is not a decomposition of the primal graph.
    """
    if raf.mode is not RcMode.ASP:
        raise UnsupportedClassError("the disj fragment needs program conditions")
    td = prepare_td(raf, td)
    builder = argument_builder(Fragment.DISJ, raf, td)
    stable_core(builder, raf.af)
    atoms = raf.auxiliary_variables()

    flag = builder.variable(Family.REDUCT_FLAG, "r")
    copy: Dict[str, str] = {}
    for b in atoms:
        copy[b] = builder.variable(Family.REDUCT_COPY, f"{b}__red", b)
        builder.shadow(b, copy[b])

    def primed(x: str) -> str:
        return copy.get(x, x)

    strict: Dict[int, str] = {}
    strict_atom: Dict[Tuple[str, int], str] = {}
    for t in td.nodes():
        strict[t] = builder.variable(Family.SUBSET, f"s__{t}", None, t)
        for b in atoms:
            if b in td.bags[t]:
                strict_atom[b, t] = builder.variable(Family.SUBSET, f"s__{b}__{t}", b, t)

    for t in td.nodes():
        # the reduct of every active rule holds for the primed copies
        for unit in node_conditions(raf, td, t):
            head = [pos(primed(h)) for h in sorted(unit.head)]
            body = [neg(primed(y)) for y in sorted(unit.pos_body)] + [pos(n) for n in sorted(unit.neg_body)]
            for a in hosts(raf, td, t, unit):
                builder.clause([neg(flag), neg(a)] + head + body, t)
        here = [strict_atom[b, t] for b in atoms if (b, t) in strict_atom]
        below = [strict[c] for c in td.children.get(t, ())]
        builder.clause([neg(flag), neg(strict[t])] + [pos(s) for s in below + here], t)
        for b in atoms:
            if (b, t) in strict_atom:
                builder.clause([neg(strict_atom[b, t]), pos(b)], t)
                builder.clause([neg(strict_atom[b, t]), neg(copy[b])], t)
    builder.clause([pos(strict[td.root])], td.root)

    last = td.last()
    for b in atoms:
        builder.clause([neg(flag), neg(copy[b]), pos(b)], last[b])

    _violation_terms(builder, raf)
    builder.term([pos(flag)], td.root)

    return builder.build(
        [
            (Quantifier.EXISTS, (Family.ARGUMENT, Family.DEFEATED)),
            (Quantifier.FORALL, (Family.RC_VARIABLE,)),
            (Quantifier.EXISTS, (Family.REDUCT_COPY, Family.SUBSET, Family.REDUCT_FLAG)),
        ]
    )
