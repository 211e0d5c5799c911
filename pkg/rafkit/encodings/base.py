"""
Shared machinery of the decomposition-guided encodings.

An ``EncodingBuilder`` hands out variables with their provenance, collects clauses and terms
together with the decomposition node they are emitted at, and assembles the QBF and its
induced decomposition. The stable-semantics core (defeated variables, conflict-freeness,
every argument in or defeated) lives here since every fragment starts from it.
"""

import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from pysat.formula import IDPool
from pysat.solvers import Solver

from ..core.classify import ConditionUnit
from ..core.formula import Literal, fresh
from ..core.model import AF, RAF, Rule
from ..decomposition.graph import primal_graph
from ..decomposition.td import TreeDecomposition, is_normalized, normalize_td, validate_td
from ..errors import DecompositionError, UnsupportedClassError
from ..logic.classical import SAT_SOLVER
from ..qbf.io import variable_numbers
from ..qbf.model import QbfInstance, Quantifier
from .induced import lift_td

logger = logging.getLogger(__name__)


class Fragment(Enum):
    STAB = "stab"
    SIMPLE = "simple"
    PROP = "prop"
    TIGHT = "tight"
    DISJ = "disj"


class Family(Enum):
    """Variable families of the encodings."""

    ARGUMENT = "A"
    DEFEATED = "D"
    WITNESS = "W"
    RC_VARIABLE = "B"
    REDUCT_COPY = "B'"
    JUSTIFICATION = "J"
    SUBSET = "S"
    REDUCT_FLAG = "r"


_FAMILY_RANK = {f: i for i, f in enumerate(Family)}


@dataclass(frozen=True)
class Provenance:
    family: Family
    element: Optional[str] = None
    node: Optional[int] = None

    def to_dict(self) -> Dict[str, object]:
        return {"family": self.family.value, "element": self.element, "node": self.node}


def pos(name: str) -> Literal:
    return Literal(name, True)


def neg(name: str) -> Literal:
    return Literal(name, False)


def unit_label(unit: ConditionUnit) -> str:
    if isinstance(unit, Rule):
        return str(unit)
    return " | ".join(str(l) for l in sorted(unit)) or "false"


def rule_clause(rule: Rule) -> FrozenSet[Literal]:
    """A rule read as the clause H | ~B+ | B-."""
    return frozenset(
        [pos(h) for h in rule.head] + [neg(b) for b in rule.pos_body] + [pos(b) for b in rule.neg_body]
    )


@dataclass(frozen=True)
class Encoding:
    """A QBF with the provenance of its variables and a decomposition of its matrix."""

    fragment: Fragment
    qbf: QbfInstance
    provenance: Dict[str, Provenance]
    arguments: Tuple[str, ...]
    source_td: TreeDecomposition
    local_variables: Dict[int, FrozenSet[str]]
    induced_td: TreeDecomposition

    def variables_of(self, family: Family) -> Tuple[str, ...]:
        return tuple(v for v in self.qbf.variables() if self.provenance[v].family is family)

    def provenance_json(self) -> str:
        """QDIMACS variable numbers mapped to family, element and node."""
        numbers = variable_numbers(self.qbf)
        entries = {
            str(numbers[v]): {"name": v, **self.provenance[v].to_dict()} for v in self.qbf.variables()
        }
        document = {
            "fragment": self.fragment.value,
            "source_width": self.source_td.width,
            "induced_width": self.induced_td.width,
            "variables": entries,
        }
        return json.dumps(document, indent=2, sort_keys=True)

    def width_line(self) -> str:
        return f"c width source={self.source_td.width} induced={self.induced_td.width}"

    def stable_projections(self) -> List[FrozenSet[str]]:
        """Distinct argument sets of the satisfying assignments of a purely existential CNF.

        Raises:
            UnsupportedClassError: the encoding has a universal block or a DNF part.
        """
        if self.qbf.dnf or any(b.quantifier is Quantifier.FORALL for b in self.qbf.blocks):
            raise UnsupportedClassError("model enumeration needs an existential CNF encoding")
        pool = IDPool()
        for v in self.qbf.variables():
            pool.id(v)
        cnf = [[pool.id(l.atom) if l.positive else -pool.id(l.atom) for l in c] for c in self.qbf.cnf]
        found: List[FrozenSet[str]] = []
        with Solver(name=SAT_SOLVER, bootstrap_with=cnf) as solver:
            while solver.solve():
                model = set(n for n in solver.get_model() if n > 0)
                chosen = frozenset(a for a in self.arguments if pool.id(a) in model)
                found.append(chosen)
                # block this projection
                solver.add_clause([-pool.id(a) if a in chosen else pool.id(a) for a in self.arguments])
        return sorted(found, key=lambda s: (len(s), sorted(s)))


class EncodingBuilder:
    """Collects variables, clauses and terms for one encoding run."""

    def __init__(self, fragment: Fragment, td: TreeDecomposition, reserved: Iterable[str]):
        self.fragment = fragment
        self.td = td
        self.taken: Set[str] = set(reserved)
        self.provenance: Dict[str, Provenance] = {}
        self.created: List[str] = []
        self._order: Dict[str, int] = {}
        self.local: Dict[int, Set[str]] = {t: set() for t in td.bags}
        self.shadows: Dict[str, str] = {}
        self.clauses: List[FrozenSet[Literal]] = []
        self.terms: List[FrozenSet[Literal]] = []
        self.has_dnf = False
        self.arguments: Tuple[str, ...] = ()
        self._seen_clauses: Set[FrozenSet[Literal]] = set()
        self._seen_terms: Set[FrozenSet[Literal]] = set()
        self._position = {t: i for i, t in enumerate(td.nodes())}
        self.logger = logging.getLogger(f"{__name__}.EncodingBuilder")

    # variables

    def declare(self, name: str, family: Family) -> str:
        """Register an existing instance variable (argument or RC atom)."""
        self.taken.add(name)
        self.provenance[name] = Provenance(family, name)
        self._order[name] = len(self.created)
        self.created.append(name)
        return name

    def variable(self, family: Family, base: str, element: Optional[str] = None, node: Optional[int] = None) -> str:
        name = fresh(base, self.taken)
        self.taken.add(name)
        self.provenance[name] = Provenance(family, element, node)
        self._order[name] = len(self.created)
        self.created.append(name)
        if node is not None:
            self.local[node].add(name)
        return name

    def shadow(self, original: str, copy: str) -> None:
        """``copy`` joins every bag holding ``original``."""
        self.shadows[original] = copy

    # matrix

    def clause(self, literals: Iterable[Literal], node: int) -> None:
        group = frozenset(literals)
        self.local[node].update(l.atom for l in group)
        if group not in self._seen_clauses:
            self._seen_clauses.add(group)
            self.clauses.append(group)

    def open_dnf(self) -> None:
        """Declare a DNF part; without any term it is false."""
        self.has_dnf = True

    def term(self, literals: Iterable[Literal], node: int) -> None:
        group = frozenset(literals)
        self.has_dnf = True
        self.local[node].update(l.atom for l in group)
        if group not in self._seen_terms:
            self._seen_terms.add(group)
            self.terms.append(group)

    def anchor(self, names: Iterable[str]) -> int:
        """First node in post-order whose bag holds all ``names``."""
        wanted = frozenset(names)
        for t in self.td.nodes():
            if wanted <= self.td.bags[t]:
                return t
        raise DecompositionError("no bag covers the variables of a condition", tuple(sorted(wanted)))

    # assembly

    def _sort_key(self, name: str) -> Tuple[int, int, int]:
        info = self.provenance[name]
        node = -1 if info.node is None else self._position[info.node]
        return (node, _FAMILY_RANK[info.family], self._order[name])

    def build(self, prefix: Sequence[Tuple[Quantifier, Sequence[Family]]]) -> Encoding:
        """Assemble the QBF; within a block variables are ordered by node, family, creation."""
        blocks = []
        for quantifier, families in prefix:
            members = [v for v in self.created if self.provenance[v].family in families]
            blocks.append((quantifier, sorted(members, key=self._sort_key)))
        cnf = list(self.clauses)
        if self.has_dnf and not self.terms:
            # an empty disjunction is false
            cnf.append(frozenset())
        qbf = QbfInstance.make(blocks, cnf=cnf, dnf=self.terms)

        local = {}
        for t, names in self.local.items():
            extra = {copy for original, copy in self.shadows.items() if original in self.td.bags[t]}
            local[t] = frozenset(names | extra)
        lifted = lift_td(self.td, local, qbf)
        self.logger.info(
            "%s encoding: %d variables, %d clauses, %d terms, width %d -> %d",
            self.fragment.value,
            len(qbf.variables()),
            len(qbf.cnf),
            len(qbf.dnf),
            self.td.width,
            lifted.width,
        )
        return Encoding(
            self.fragment,
            qbf,
            dict(self.provenance),
            self.arguments,
            self.td,
            local,
            lifted,
        )


def prepare_td(obj: Union[AF, RAF], td: TreeDecomposition) -> TreeDecomposition:
    """Validate ``td`` on the primal graph and normalize it when needed.

    RAFs additionally get their conditions spread over copy nodes, at most width+1 per node.
    """
    validate_td(primal_graph(obj), td)
    if isinstance(obj, RAF):
        if td.condition_slots is None or not is_normalized(td):
            td = normalize_td(td, obj)
    elif not is_normalized(td):
        td = normalize_td(td)
    return td


def stable_core(builder: EncodingBuilder, af: AF) -> Dict[Tuple[str, int], str]:
    """Defeated variables and the stable-extension clauses; returns the d_a^t map."""
    td = builder.td
    nodes = td.nodes()
    defeated: Dict[Tuple[str, int], str] = {}
    for t in nodes:
        for a in af.arguments:
            if a in td.bags[t]:
                defeated[a, t] = builder.variable(Family.DEFEATED, f"d__{a}__{t}", a, t)

    attacks = af.sorted_attacks()
    for t in nodes:
        bag = td.bags[t]
        for a in af.arguments:
            if a not in bag:
                continue
            below = [defeated[a, c] for c in td.children.get(t, ()) if (a, c) in defeated]
            attackers = [b for b, target in attacks if target == a and b in bag]
            builder.clause([neg(defeated[a, t])] + [pos(d) for d in below] + [pos(b) for b in attackers], t)

    for a, b in attacks:
        builder.clause([neg(a), neg(b)], builder.anchor({a, b}))

    last = td.last()
    for a in af.arguments:
        builder.clause([pos(a), pos(defeated[a, last[a]])], last[a])
    return defeated


def argument_builder(fragment: Fragment, obj: Union[AF, RAF], td: TreeDecomposition) -> EncodingBuilder:
    """Builder with the argument variables (and RC atoms of a RAF) declared."""
    af = obj.af if isinstance(obj, RAF) else obj
    reserved = set(af.arguments)
    if isinstance(obj, RAF):
        reserved |= obj.rc_variables()
    builder = EncodingBuilder(fragment, td, reserved)
    builder.arguments = af.arguments
    for a in af.arguments:
        builder.declare(a, Family.ARGUMENT)
    if isinstance(obj, RAF):
        for b in obj.auxiliary_variables():
            builder.declare(b, Family.RC_VARIABLE)
    return builder
