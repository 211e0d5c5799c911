"""
Rejection-condition classification and the per-argument condition view.

A *condition unit* is what the decomposition-based machinery indexes: a clause (frozenset of
literals) in classical mode, a rule in asp mode.
"""

import logging
from functools import lru_cache
from typing import Dict, FrozenSet, Tuple, Union

from ..logic.asp import Program, is_tight
from ..logic.classical import cnf_clauses, is_cnf_shaped
from ..logic.tseitin import tseitin
from .formula import Clause, Formula, clause_formula, conj
from .model import RAF, RcClass, RcMode, Rule

logger = logging.getLogger(__name__)

ConditionUnit = Union[Clause, Rule]


def program_of(raf: RAF) -> Program:
    """C(A) as one program (asp mode)."""
    return Program.of(raf.conditions(raf.arguments))


def classify_rc(raf: RAF) -> RcClass:
    """Most specific class; tightness is tested before normality."""
    if raf.mode is RcMode.CLASSICAL:
        if raf.rc_variables() <= set(raf.arguments):
            return RcClass.SIMPLE
        return RcClass.PROPOSITIONAL
    program = program_of(raf)
    if is_tight(program):
        return RcClass.TIGHT
    if program.is_normal():
        return RcClass.NORMAL
    return RcClass.DISJUNCTIVE


@lru_cache(maxsize=4096)
def _formula_clauses(phi: Formula) -> Tuple[Clause, ...]:
    return cnf_clauses(phi)


def condition_units(raf: RAF, argument: str) -> Tuple[ConditionUnit, ...]:
    """Clauses of C(a) (distributive CNF, no auxiliaries) or its rules."""
    cond = raf.condition(argument)
    if raf.mode is RcMode.ASP:
        return cond.body
    units = []
    seen = set()
    for phi in cond.body:
        for clause in _formula_clauses(phi):
            if clause not in seen:
                seen.add(clause)
                units.append(clause)
    return tuple(units)


def unit_variables(unit: ConditionUnit) -> FrozenSet[str]:
    if isinstance(unit, Rule):
        return unit.atoms
    return frozenset(l.atom for l in unit)


def is_clausal(raf: RAF) -> bool:
    """Every classical RC formula is CNF-shaped."""
    if raf.mode is not RcMode.CLASSICAL:
        return False
    return all(is_cnf_shaped(phi) for a in raf.arguments for phi in raf.condition(a).body)


def clausify_raf(raf: RAF) -> RAF:
    """Replace non-CNF RC formulas by their Tseitin clauses plus the asserted output.

    Auxiliary atoms are fresh non-argument variables; per argument the RC stays
    equisatisfiable under every fixing of the argument variables, so extensions are unchanged.
    """
    if raf.mode is not RcMode.CLASSICAL:
        return raf
    taken = set(raf.arguments) | set(raf.rc_variables())
    rc: Dict[str, list] = {}
    counter = 0
    for a in raf.arguments:
        body = []
        for phi in raf.condition(a).body:
            if is_cnf_shaped(phi):
                body.append(phi)
                continue
            counter += 1
            encoded = tseitin(phi, taken, prefix=f"__c{counter}_")
            taken |= set(encoded.aux)
            clauses = [frozenset(c) for c in encoded.clauses] + [frozenset([encoded.output])]
            body.append(conj(clause_formula(c) for c in clauses))
        rc[a] = body
    logger.debug("Clausified %d formulas", counter)
    return RAF.make(raf.af, rc, raf.mode)
