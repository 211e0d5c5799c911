"""
Classical propositional evaluation and satisfiability under a fixed partial assignment.

Two consistency backends share one contract:
- ``brute``: enumerates the free variables (the trusted reference, capped)
- ``sat``: Tseitin clauses handed to a pysat solver, fixed values as assumptions
"""

import itertools
import logging
from typing import FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from pysat.formula import IDPool
from pysat.solvers import Solver

from ..config import Caps
from ..core.formula import (
    And,
    Atom,
    BOTTOM,
    Clause,
    Const,
    Formula,
    Implies,
    Literal,
    Not,
    Or,
    TOP,
    variables,
)
from ..errors import CapExceededError, ValidationError

logger = logging.getLogger(__name__)

Assignment = Mapping[str, bool]

SAT_SOLVER = "glucose3"


def evaluate(phi: Formula, nu: Assignment) -> bool:
    """Truth value of phi under nu; nu must assign every variable of phi."""
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Atom):
        try:
            return bool(nu[phi.name])
        except KeyError:
            raise ValidationError(f"unassigned variable '{phi.name}'", ("assignment", phi.name))
    if isinstance(phi, Not):
        return not evaluate(phi.operand, nu)
    if isinstance(phi, And):
        return all(evaluate(o, nu) for o in phi.operands)
    if isinstance(phi, Or):
        return any(evaluate(o, nu) for o in phi.operands)
    return (not evaluate(phi.left, nu)) or evaluate(phi.right, nu)


def simplify(phi: Formula, nu: Assignment) -> Formula:
    """Partially evaluate phi; assigned atoms disappear, constants propagate."""
    if isinstance(phi, Const):
        return phi
    if isinstance(phi, Atom):
        if phi.name in nu:
            return TOP if nu[phi.name] else BOTTOM
        return phi
    if isinstance(phi, Not):
        inner = simplify(phi.operand, nu)
        if isinstance(inner, Const):
            return Const(not inner.value)
        return Not(inner)
    if isinstance(phi, (And, Or)):
        absorbing = isinstance(phi, Or)
        kept = []
        for operand in phi.operands:
            reduced = simplify(operand, nu)
            if isinstance(reduced, Const):
                if reduced.value is absorbing:
                    return reduced
                continue
            kept.append(reduced)
        if not kept:
            return Const(not absorbing)
        return kept[0] if len(kept) == 1 else type(phi)(tuple(kept))
    left = simplify(phi.left, nu)
    right = simplify(phi.right, nu)
    if isinstance(left, Const):
        return right if left.value else TOP
    if isinstance(right, Const):
        return TOP if right.value else simplify(Not(left), {})
    return Implies(left, right)


def nnf(phi: Formula, positive: bool = True) -> Formula:
    """Negation normal form; implications are eliminated."""
    if isinstance(phi, Const):
        return Const(phi.value == positive)
    if isinstance(phi, Atom):
        return phi if positive else Not(phi)
    if isinstance(phi, Not):
        return nnf(phi.operand, not positive)
    if isinstance(phi, Implies):
        return nnf(Or((Not(phi.left), phi.right)), positive)
    operands = tuple(nnf(o, positive) for o in phi.operands)
    if isinstance(phi, And):
        return And(operands) if positive else Or(operands)
    return Or(operands) if positive else And(operands)


def _nnf_clauses(phi: Formula) -> List[FrozenSet[Literal]]:
    # phi is in NNF
    if isinstance(phi, Const):
        return [] if phi.value else [frozenset()]
    if isinstance(phi, Atom):
        return [frozenset([Literal(phi.name, True)])]
    if isinstance(phi, Not):
        return [frozenset([Literal(phi.operand.name, False)])]
    if isinstance(phi, And):
        clauses = []
        for operand in phi.operands:
            clauses.extend(_nnf_clauses(operand))
        return clauses
    # Or: distribute
    product = [frozenset()]
    for operand in phi.operands:
        part = _nnf_clauses(operand)
        product = [c | d for c in product for d in part]
    return product


def _tautology(clause: FrozenSet[Literal]) -> bool:
    return any(l.negate() in clause for l in clause)


def cnf_clauses(phi: Formula) -> Tuple[Clause, ...]:
    """Equivalent clause set over var(phi) (no auxiliary variables).

    True yields no clause, false a single empty clause. Tautological clauses are dropped
    and duplicates removed; the first-occurrence order is kept.
    """
    result = []
    seen = set()
    for clause in _nnf_clauses(nnf(phi)):
        if _tautology(clause) or clause in seen:
            continue
        seen.add(clause)
        result.append(clause)
    return tuple(result)


def is_cnf_shaped(phi: Formula) -> bool:
    """True if phi is, after NNF, a conjunction of disjunctions of literals."""

    def is_literal(node):
        return isinstance(node, Atom) or (isinstance(node, Not) and isinstance(node.operand, Atom))

    def is_clause(node):
        if is_literal(node) or isinstance(node, Const):
            return True
        return isinstance(node, Or) and all(is_clause(o) for o in node.operands)

    def is_cnf(node):
        if is_clause(node):
            return True
        return isinstance(node, And) and all(is_cnf(o) for o in node.operands)

    return is_cnf(nnf(phi))


def _check_cap(free: Sequence[str], caps: Caps) -> None:
    if len(free) > caps.free_variables:
        raise CapExceededError("free_variables", caps.free_variables, len(free))


def brute_force_consistent(formulas: Iterable[Formula], fixed: Assignment, caps: Optional[Caps] = None) -> bool:
    caps = caps or Caps()
    reduced = []
    for phi in formulas:
        phi = simplify(phi, fixed)
        if phi == BOTTOM:
            return False
        if phi != TOP:
            reduced.append(phi)
    free = sorted(set().union(*(variables(phi) for phi in reduced))) if reduced else []
    _check_cap(free, caps)
    for values in itertools.product((False, True), repeat=len(free)):
        nu = dict(zip(free, values))
        if all(evaluate(phi, nu) for phi in reduced):
            return True
    return False


def sat_consistent(formulas: Iterable[Formula], fixed: Assignment) -> bool:
    from .tseitin import tseitin

    pool = IDPool()
    taken = set(fixed)
    formulas = list(formulas)
    for phi in formulas:
        taken |= variables(phi)
    clauses: List[List[int]] = []
    for index, phi in enumerate(formulas):
        encoded = tseitin(phi, taken, prefix=f"__ts{index}_")
        taken |= set(encoded.aux)
        for clause in encoded.clauses + ((encoded.output,),):
            clauses.append([pool.id(l.atom) if l.positive else -pool.id(l.atom) for l in clause])
    assumptions = [pool.id(a) if value else -pool.id(a) for a, value in sorted(fixed.items())]
    with Solver(name=SAT_SOLVER, bootstrap_with=clauses) as solver:
        return solver.solve(assumptions=assumptions)


def classical_consistent(
    formulas: Iterable[Formula],
    fixed: Assignment,
    caps: Optional[Caps] = None,
    backend: str = "brute",
) -> bool:
    """Is there a total extension of ``fixed`` satisfying every formula?

    Args:
        formulas: the formula set; empty means consistent
        fixed: values for some of the variables
        caps: ``free_variables`` bounds the brute-force backend
        backend: ``brute`` or ``sat``

    Returns:
        True iff the set is satisfiable under the fixed values.
    """
    if backend == "brute":
        return brute_force_consistent(formulas, fixed, caps)
    if backend == "sat":
        return sat_consistent(formulas, fixed)
    raise ValidationError(f"unknown consistency backend '{backend}'", ("backend",))
