"""
Seeded random instances for property suites and the ``generate`` command.

Key Features:
- Argumentation frameworks with a given attack density
- RAFs per rejection-condition class (simple, propositional, tight, normal, disjunctive)
- CAFs with a random constraint over the arguments and random shrinkings
- QBFs per prefix shape (CNF or DNF matrix) and plain CNFs

Every draw goes through one ``numpy.random.Generator``, so equal seeds give equal instances.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core.formula import Atom, Formula, Implies, Literal, Not, clause_formula, conj, disj, term_formula
from .core.model import AF, CAF, RAF, RcClass, RcMode, Rule
from .errors import ValidationError
from .qbf.model import QbfInstance, Quantifier

logger = logging.getLogger(__name__)

# block variable prefixes, outermost first
BLOCK_LETTERS = "xyzwuv"

DNF_SHAPES = ("ea", "aea")


class InstanceGenerator:
    """Random instances drawn from one seeded generator."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.logger = logging.getLogger(f"{__name__}.InstanceGenerator")

    # primitives

    def _count(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        return int(self.rng.integers(low, high + 1))

    def _coin(self, p: float = 0.5) -> bool:
        return bool(self.rng.random() < p)

    def _pick(self, items: Sequence[str], k: int) -> List[str]:
        k = min(k, len(items))
        if k <= 0:
            return []
        return [items[int(i)] for i in sorted(self.rng.choice(len(items), size=k, replace=False))]

    def _literals(self, atoms: Sequence[str], k: int) -> List[Literal]:
        return [Literal(a, self._coin()) for a in self._pick(atoms, k)]

    def formula(self, atoms: Sequence[str], depth: int = 2) -> Formula:
        """Random formula over ``atoms`` with connective nesting up to ``depth``."""
        if depth <= 0 or self._coin(0.3):
            lit = self._literals(atoms, 1)[0]
            return Atom(lit.atom) if lit.positive else Not(Atom(lit.atom))
        kind = self._count(0, 3)
        if kind == 0:
            return Not(self.formula(atoms, depth - 1))
        if kind == 1:
            return Implies(self.formula(atoms, depth - 1), self.formula(atoms, depth - 1))
        operands = [self.formula(atoms, depth - 1) for _ in range(self._count(2, 3))]
        return conj(operands) if kind == 2 else disj(operands)

    # frameworks

    def af(self, n_arguments: int = 5, density: float = 0.3, self_attacks: float = 0.1) -> AF:
        if n_arguments <= 0:
            raise ValidationError("a framework needs at least one argument", ("n_arguments",))
        arguments = [f"a{i}" for i in range(1, n_arguments + 1)]
        attacks = []
        for a in arguments:
            for b in arguments:
                p = self_attacks if a == b else density
                if self._coin(p):
                    attacks.append((a, b))
        return AF.make(arguments, attacks)

    def shrinking(self, af: AF) -> Tuple[str, ...]:
        chosen = set(self._pick(af.arguments, self._count(0, len(af.arguments))))
        return tuple(a for a in af.arguments if a in chosen)

    def caf(self, n_arguments: int = 5, density: float = 0.3, depth: int = 3) -> CAF:
        af = self.af(n_arguments, density)
        return CAF(af, self.formula(af.arguments, depth))

    def raf(
        self,
        rc_class: RcClass = RcClass.PROPOSITIONAL,
        n_arguments: int = 5,
        n_auxiliary: int = 3,
        density: float = 0.3,
    ) -> RAF:
        """Random RAF whose conditions classify exactly as ``rc_class``.

        Raises:
            ValidationError: too few auxiliary atoms for the class (propositional and tight
                need one, normal and disjunctive two).
        """
        rc_class = RcClass(rc_class)
        needed = {RcClass.SIMPLE: 0, RcClass.PROPOSITIONAL: 1, RcClass.TIGHT: 1}.get(rc_class, 2)
        if n_auxiliary < needed:
            raise ValidationError(
                f"{rc_class.value} conditions need {needed} auxiliary atoms", ("n_auxiliary",)
            )
        af = self.af(n_arguments, density)
        auxiliary = [f"b{i}" for i in range(1, n_auxiliary + 1)]
        if rc_class is RcClass.SIMPLE:
            raf = RAF.make(af, self._classical(af.arguments, list(af.arguments), None), RcMode.CLASSICAL)
        elif rc_class is RcClass.PROPOSITIONAL:
            raf = RAF.make(af, self._classical(af.arguments, list(af.arguments) + auxiliary, auxiliary[0]), RcMode.CLASSICAL)
        else:
            raf = RAF.make(af, self._program(af.arguments, auxiliary, rc_class), RcMode.ASP)
        self.logger.debug("Generated %s RAF with %d arguments", rc_class.value, len(af.arguments))
        return raf

    def _classical(self, arguments: Sequence[str], atoms: Sequence[str], forced: Optional[str]) -> Dict[str, List[Formula]]:
        rc: Dict[str, List[Formula]] = {}
        for a in arguments:
            body: List[Formula] = []
            for _ in range(self._count(0, 2)):
                shape = self._count(0, 2)
                if shape == 0:
                    body.append(clause_formula(self._literals(atoms, self._count(1, 3))))
                elif shape == 1:
                    body.append(term_formula(self._literals(atoms, self._count(1, 2))))
                else:
                    body.append(self.formula(atoms, 2))
            rc[a] = body
        if forced is not None:
            # keep at least one auxiliary atom so the class is propositional
            first = arguments[0]
            rc[first] = rc[first] + [clause_formula([Literal(forced, self._coin()), Literal(first, False)])]
        return rc

    def _rule(self, arguments: Sequence[str], auxiliary: Sequence[str], heads: int, ordered: bool) -> Rule:
        """Random rule; ``ordered`` keeps positive bodies below the heads (tight)."""
        head = self._pick(auxiliary, heads)
        if ordered and head:
            lowest = min(auxiliary.index(h) for h in head)
            below = list(arguments) + list(auxiliary[:lowest])
        else:
            below = list(arguments) + list(auxiliary)
        body = self._pick(below, self._count(0, 2))
        pos = [b for b in body if self._coin(0.6)]
        neg = [b for b in list(arguments) + list(auxiliary) if b not in pos and b not in head and self._coin(0.15)]
        return Rule.make(head, pos, neg[:2])

    def _program(self, arguments: Sequence[str], auxiliary: Sequence[str], rc_class: RcClass) -> Dict[str, List[Rule]]:
        ordered = rc_class is RcClass.TIGHT
        max_head = 1 if rc_class is RcClass.NORMAL else 2
        rc: Dict[str, List[Rule]] = {}
        for a in arguments:
            rules = []
            for _ in range(self._count(0, 3)):
                heads = 0 if self._coin(0.2) else self._count(1, max_head)
                rules.append(self._rule(arguments, auxiliary, heads, ordered))
            rc[a] = list(dict.fromkeys(rules))

        first = arguments[0]
        if rc_class is RcClass.TIGHT:
            rc[first].append(Rule.make(head=[auxiliary[0]], neg=[first]))
        else:
            b1, b2 = auxiliary[0], auxiliary[1]
            # a positive loop makes the program non-tight
            rc[first] += [Rule.make(head=[b1], pos=[b2]), Rule.make(head=[b2], pos=[b1])]
            if rc_class is RcClass.DISJUNCTIVE:
                rc[first].append(Rule.make(head=[b1, b2], neg=[first]))
        return {a: list(dict.fromkeys(rules)) for a, rules in rc.items()}

    # formulas

    def qbf(
        self,
        shape: str = "ea",
        block_size: int = 2,
        n_groups: int = 3,
        group_size: int = 3,
        dnf: Optional[bool] = None,
    ) -> QbfInstance:
        """Random closed prenex QBF.

        ``shape`` is a quantifier string such as ``"eae"``; ``dnf`` defaults to a term matrix
        for the exists-forall and forall-exists-forall shapes. Terms of an exists-first DNF
        always mention an outermost variable, as the hardness generators require.
        """
        if not shape or any(c not in "ea" for c in shape) or len(shape) > len(BLOCK_LETTERS):
            raise ValidationError(f"invalid prefix shape '{shape}'", ("shape",))
        if block_size <= 0 or group_size <= 0:
            raise ValidationError("block and group sizes must be positive", ("block_size",))
        dnf = shape in DNF_SHAPES if dnf is None else dnf
        blocks = [[f"{BLOCK_LETTERS[i]}{j}" for j in range(1, block_size + 1)] for i in range(len(shape))]
        everything = [v for block in blocks for v in block]
        groups = []
        for _ in range(n_groups):
            lits = self._literals(everything, self._count(1, group_size))
            if dnf and shape[0] == "e" and not any(l.atom in blocks[0] for l in lits):
                lits = lits[: max(0, group_size - 1)] + self._literals(blocks[0], 1)
            groups.append(frozenset(lits))
        prefix = [(Quantifier.parse(q), block) for q, block in zip(shape, blocks)]
        if dnf:
            return QbfInstance.make(prefix, dnf=groups)
        return QbfInstance.make(prefix, cnf=groups)

    def cnf(self, n_variables: int = 4, n_clauses: int = 5, clause_size: int = 3) -> QbfInstance:
        """Existential CNF (a DIMACS instance)."""
        return self.qbf("e", n_variables, n_clauses, clause_size, dnf=False)


def random_af(seed: int = 0, **kwargs) -> AF:
    return InstanceGenerator(seed).af(**kwargs)


def random_raf(rc_class: RcClass = RcClass.PROPOSITIONAL, seed: int = 0, **kwargs) -> RAF:
    return InstanceGenerator(seed).raf(rc_class, **kwargs)


def random_caf(seed: int = 0, **kwargs) -> CAF:
    return InstanceGenerator(seed).caf(**kwargs)


def random_qbf(shape: str = "ea", seed: int = 0, **kwargs) -> QbfInstance:
    return InstanceGenerator(seed).qbf(shape, **kwargs)
