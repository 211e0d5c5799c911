"""Prenex CNF: the DNF part becomes term selectors in a new innermost existential block."""

import logging
from typing import List

from ..core.formula import Literal, fresh
from .model import QbfInstance, Quantifier

logger = logging.getLogger(__name__)


def prenex_cnf(qbf: QbfInstance, prefix: str = "__t") -> QbfInstance:
    """Equivalent instance with an empty DNF part.

    Each term T_i gets a selector t_i <-> AND(T_i), and one clause asks for some t_i. The
    selectors are functions of the other variables, so quantifying them innermost keeps the
    truth value.
    """
    if not qbf.dnf:
        return qbf
    taken = set(qbf.variables())
    selectors: List[str] = []
    clauses = list(qbf.cnf)
    for i, term in enumerate(qbf.dnf, start=1):
        name = fresh(f"{prefix}{i}", taken)
        taken.add(name)
        selectors.append(name)
        t = Literal(name, True)
        clauses += [frozenset([t.negate(), l]) for l in sorted(term)]
        clauses.append(frozenset([t] + [l.negate() for l in sorted(term)]))
    clauses.append(frozenset(Literal(s, True) for s in selectors))
    blocks = [(b.quantifier, b.variables) for b in qbf.blocks]
    blocks.append((Quantifier.EXISTS, selectors))
    logger.debug("Prenexed %d terms into selector clauses", len(selectors))
    return QbfInstance.make(blocks, cnf=clauses)
