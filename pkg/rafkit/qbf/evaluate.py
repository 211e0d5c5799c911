"""
QBF evaluation.

``evaluate_qbf`` is the reference: plain expansion over the prefix, capped by
``Caps.qbf_variables``. ``QbfEvaluator`` searches in prefix order with unit reasoning,
skips variables no open clause or term mentions, and hands purely existential or purely
universal remainders to a SAT solver; it is what the encodings are checked with.
"""

import logging
from functools import partial
from typing import Dict, List, Optional, Tuple

from pysat.formula import IDPool
from pysat.solvers import Solver

from ..config import Caps
from ..core.formula import Literal
from ..errors import CapExceededError
from ..logic.classical import SAT_SOLVER
from .model import QbfInstance, Quantifier

logger = logging.getLogger(__name__)

Assignment = Dict[str, bool]


def _literal_value(lit: Literal, nu: Assignment) -> Optional[bool]:
    value = nu.get(lit.atom)
    if value is None:
        return None
    return value == lit.positive


def _sat_literal(pool: IDPool, lit: Literal) -> int:
    return pool.id(lit.atom) if lit.positive else -pool.id(lit.atom)


def matrix_value(qbf: QbfInstance, nu: Assignment) -> bool:
    """The matrix under a total assignment."""
    if not all(any(nu[l.atom] == l.positive for l in c) for c in qbf.cnf):
        return False
    return not qbf.dnf or any(all(nu[l.atom] == l.positive for l in t) for t in qbf.dnf)


def evaluate_qbf(qbf: QbfInstance, caps: Optional[Caps] = None) -> bool:
    """Truth value by expansion: exists x.phi = phi[x/1] or phi[x/0], forall dually."""
    caps = caps or Caps()
    order = qbf.variables()
    if len(order) > caps.qbf_variables:
        raise CapExceededError("qbf_variables", caps.qbf_variables, len(order))
    quantifiers = qbf.quantifier_of()
    nu: Assignment = {}

    def expand(i: int) -> bool:
        if i == len(order):
            return matrix_value(qbf, nu)
        v = order[i]
        results = []
        for value in (True, False):
            nu[v] = value
            results.append(expand(i + 1))
            # short-circuit on the deciding value
            if quantifiers[v] is Quantifier.EXISTS and results[-1]:
                break
            if quantifiers[v] is Quantifier.FORALL and not results[-1]:
                break
        del nu[v]
        return results[-1]

    return expand(0)


class QbfEvaluator:
    """Search evaluator for instances beyond the expansion cap."""

    def __init__(self, qbf: QbfInstance, caps: Optional[Caps] = None, sat_leaves: bool = True):
        self.qbf = qbf
        self.caps = caps or Caps()
        self.sat_leaves = sat_leaves
        self.order = qbf.variables()
        self.quantifiers = qbf.quantifier_of()
        self.logger = logging.getLogger(f"{__name__}.QbfEvaluator")
        self.nodes = 0
        self.sat_calls = 0

    def evaluate(self) -> bool:
        relevant = self.qbf.matrix_variables()
        if len(relevant) > self.caps.qbf_expansion_variables:
            raise CapExceededError("qbf_expansion_variables", self.caps.qbf_expansion_variables, len(relevant))
        result = self._search({})
        self.logger.debug("Evaluated: %s after %d nodes and %d SAT calls", result, self.nodes, self.sat_calls)
        return result

    # reduction under a partial assignment

    def _open(self, nu: Assignment):
        """Open clauses and terms, or a verdict when the matrix is already decided."""
        clauses: List[Tuple[Literal, ...]] = []
        for clause in self.qbf.cnf:
            rest = []
            satisfied = False
            for lit in clause:
                value = _literal_value(lit, nu)
                if value is None:
                    rest.append(lit)
                elif value:
                    satisfied = True
                    break
            if satisfied:
                continue
            if not rest:
                return False, (), ()
            clauses.append(tuple(rest))
        terms: List[Tuple[Literal, ...]] = []
        dnf_true = not self.qbf.dnf
        for term in self.qbf.dnf:
            rest = []
            falsified = False
            for lit in term:
                value = _literal_value(lit, nu)
                if value is None:
                    rest.append(lit)
                elif not value:
                    falsified = True
                    break
            if falsified:
                continue
            if not rest:
                dnf_true = True
                break
            terms.append(tuple(rest))
        if dnf_true:
            terms = []
        elif not terms:
            return False, (), ()
        if not clauses and dnf_true:
            return True, (), ()
        return None, tuple(clauses), tuple(terms)

    def _search(self, nu: Assignment) -> bool:
        self.nodes += 1
        verdict, clauses, terms = self._open(nu)
        if verdict is not None:
            return verdict

        # unit reasoning on clauses: a lone existential literal is forced, a lone universal one loses
        for clause in clauses:
            if len(clause) == 1:
                lit = clause[0]
                if self.quantifiers[lit.atom] is Quantifier.FORALL:
                    return False
                nu[lit.atom] = lit.positive
                try:
                    return self._search(nu)
                finally:
                    del nu[lit.atom]

        open_vars = {l.atom for group in clauses + terms for l in group}
        remaining = [v for v in self.order if v in open_vars]
        kinds = {self.quantifiers[v] for v in remaining}
        if self.sat_leaves and kinds == {Quantifier.EXISTS}:
            return self._satisfiable(clauses, terms)
        if self.sat_leaves and kinds == {Quantifier.FORALL}:
            return not self._falsifiable(clauses, terms)

        v = remaining[0]
        want = self.quantifiers[v] is Quantifier.EXISTS
        for value in (True, False):
            nu[v] = value
            try:
                result = self._search(nu)
            finally:
                del nu[v]
            if result == want:
                return want
        return not want

    # SAT leaves

    def _satisfiable(self, clauses, terms) -> bool:
        """Some assignment satisfies every clause and (if present) some term."""
        self.sat_calls += 1
        pool = IDPool()
        lit = partial(_sat_literal, pool)
        cnf = [[lit(l) for l in clause] for clause in clauses]
        if terms:
            selectors = []
            for i, term in enumerate(terms):
                s = pool.id(("term", i))
                selectors.append(s)
                cnf += [[-s, lit(l)] for l in term]
            cnf.append(selectors)
        with Solver(name=SAT_SOLVER, bootstrap_with=cnf) as solver:
            return solver.solve()

    def _falsifiable(self, clauses, terms) -> bool:
        """Some assignment falsifies a clause or every term."""
        self.sat_calls += 1
        pool = IDPool()
        lit = partial(_sat_literal, pool)
        cnf = []
        options = []
        for i, clause in enumerate(clauses):
            s = pool.id(("clause", i))
            options.append(s)
            cnf += [[-s, -lit(l)] for l in clause]
        if terms:
            g = pool.id(("terms",))
            options.append(g)
            cnf += [[-g] + [-lit(l) for l in term] for term in terms]
        if not options:
            return False
        cnf.append(options)
        with Solver(name=SAT_SOLVER, bootstrap_with=cnf) as solver:
            return solver.solve()


def evaluate_search(qbf: QbfInstance, caps: Optional[Caps] = None) -> bool:
    return QbfEvaluator(qbf, caps).evaluate()
