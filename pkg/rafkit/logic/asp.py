"""
Answer-set machinery for ground disjunctive programs.

Key Features:
- GL reduct and answer-set checking (least model for normal reducts, subset search otherwise)
- Consistency by enumeration over the atoms that are not fixed by facts or unit constraints
- Tightness via the positive dependency digraph (networkx)
- Justified-model check for tight programs
"""

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Set, Tuple

import networkx as nx

from ..config import Caps
from ..core.model import Rule
from ..errors import CapExceededError, UnsupportedClassError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Program:
    """A finite set of rules; order is kept only for reproducible output."""

    rules: Tuple[Rule, ...] = ()

    @classmethod
    def of(cls, rules: Iterable[Rule]) -> "Program":
        seen = set()
        unique = []
        for rule in rules:
            if rule not in seen:
                seen.add(rule)
                unique.append(rule)
        return cls(tuple(unique))

    @property
    def atoms(self) -> FrozenSet[str]:
        """at(P)."""
        found: Set[str] = set()
        for rule in self.rules:
            found |= rule.atoms
        return frozenset(found)

    def is_negation_free(self) -> bool:
        return all(not r.neg_body for r in self.rules)

    def is_normal(self) -> bool:
        return all(len(r.head) <= 1 for r in self.rules)

    def __len__(self) -> int:
        return len(self.rules)


def satisfies(model: Iterable[str], rule: Rule) -> bool:
    m = model if isinstance(model, (set, frozenset)) else set(model)
    if not rule.pos_body <= m or rule.neg_body & m:
        return True
    return bool(rule.head & m)


def is_model(program: Program, model: Iterable[str]) -> bool:
    m = frozenset(model)
    return all(satisfies(m, r) for r in program.rules)


def dependency_digraph(program: Program) -> nx.DiGraph:
    """D_P: edge (x, y) whenever some rule has x in its head and y in its positive body."""
    graph = nx.DiGraph()
    graph.add_nodes_from(sorted(program.atoms))
    for rule in program.rules:
        for x in rule.head:
            for y in rule.pos_body:
                graph.add_edge(x, y)
    return graph


def is_tight(program: Program) -> bool:
    """No cycle in D_P; a self-loop is a cycle."""
    return nx.is_directed_acyclic_graph(dependency_digraph(program))


def gl_reduct(program: Program, model: Iterable[str]) -> Program:
    """P^M = {H(r) <- B+(r) | r in P, M and B-(r) disjoint}."""
    m = frozenset(model)
    return Program.of(
        Rule(r.head, r.pos_body, frozenset()) for r in program.rules if not (r.neg_body & m)
    )


def least_model(program: Program) -> FrozenSet[str]:
    """Least model of the definite rules (constraints and disjunctions are ignored)."""
    derived: Set[str] = set()
    changed = True
    definite = [r for r in program.rules if len(r.head) == 1]
    while changed:
        changed = False
        for rule in definite:
            if rule.pos_body <= derived and not rule.head <= derived:
                derived |= rule.head
                changed = True
    return frozenset(derived)


def is_answer_set(program: Program, model: Iterable[str], caps: Optional[Caps] = None) -> bool:
    """M is a subset-minimal model of P^M."""
    caps = caps or Caps()
    m = frozenset(model)
    reduct = gl_reduct(program, m)
    if not is_model(reduct, m):
        return False
    if reduct.is_normal():
        return least_model(reduct) == m
    if len(m) > caps.answer_set_atoms:
        raise CapExceededError("answer_set_atoms", caps.answer_set_atoms, len(m))
    # every model of the reduct contains its facts
    must = frozenset(a for r in reduct.rules if r.is_fact for a in r.head)
    optional = sorted(m - must)
    for size in range(len(optional)):
        for chosen in itertools.combinations(optional, size):
            if is_model(reduct, must | frozenset(chosen)):
                return False
    return True


def candidate_space(program: Program) -> Tuple[FrozenSet[str], Tuple[str, ...]]:
    """Atoms in every answer set, and the atoms left to guess.

    Facts are in every answer set. Atoms that occur in no head, or that are forbidden by a
    unit constraint, are in none.
    """
    facts = frozenset(a for r in program.rules if r.is_fact for a in r.head)
    forbidden = {next(iter(r.pos_body)) for r in program.rules if r.is_constraint and len(r.pos_body) == 1 and not r.neg_body}
    heads = {a for r in program.rules for a in r.head}
    free = tuple(sorted(heads - facts - forbidden))
    return facts, free


def answer_sets(program: Program, caps: Optional[Caps] = None):
    """Yield every answer set in a deterministic order."""
    caps = caps or Caps()
    facts, free = candidate_space(program)
    if len(free) > caps.answer_set_atoms:
        raise CapExceededError("answer_set_atoms", caps.answer_set_atoms, len(free))
    for size in range(len(free) + 1):
        for chosen in itertools.combinations(free, size):
            candidate = facts | frozenset(chosen)
            if is_answer_set(program, candidate, caps):
                yield candidate


def asp_consistent(program: Program, caps: Optional[Caps] = None) -> bool:
    """True iff the program has an answer set."""
    for _ in answer_sets(program, caps):
        return True
    return False


def justified(program: Program, model: FrozenSet[str], atom: str) -> bool:
    for rule in program.rules:
        if (
            atom in rule.head
            and rule.pos_body <= model
            and not (rule.neg_body & model)
            and rule.head & model == {atom}
        ):
            return True
    return False


def justified_model_check(program: Program, model: Iterable[str]) -> bool:
    """M is a model of P and every atom of M is supported by a rule whose other heads are false."""
    if not is_tight(program):
        raise UnsupportedClassError("justified-model check needs a tight program")
    m = frozenset(model)
    return is_model(program, m) and all(justified(program, m, a) for a in m)


def shift(program: Program) -> Program:
    """Replace h1 | ... | hn <- B by hi <- B, not hj (j != i). Exact for head-cycle-free programs."""
    shifted = []
    for rule in program.rules:
        if len(rule.head) <= 1:
            shifted.append(rule)
            continue
        for h in sorted(rule.head):
            shifted.append(Rule(frozenset([h]), rule.pos_body, rule.neg_body | (rule.head - {h})))
    return Program.of(shifted)
