"""
Domain types for argumentation frameworks with rejection conditions.

Key types:
- AF: arguments in declaration order plus an attack relation
- Rule: disjunctive ASP rule H <- B+, not B-
- RejectionCondition: formulas (classical mode) or rules (asp mode); empty means "true"
- RAF: an AF with one rejection condition per argument
- CAF: an AF with one global propositional constraint
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from ..errors import ValidationError
from .formula import Formula, TOP, is_identifier, variables

logger = logging.getLogger(__name__)

Attack = Tuple[str, str]

# read as the constants inside conditions, so no argument may carry them
RESERVED_NAMES = frozenset({"true", "false"})


class RcMode(Enum):
    """How rejection conditions are read."""

    CLASSICAL = "classical"
    ASP = "asp"


class RcClass(Enum):
    """Rejection-condition classes, most specific first within each mode."""

    SIMPLE = "simple"
    PROPOSITIONAL = "propositional"
    TIGHT = "tight"
    NORMAL = "normal"
    DISJUNCTIVE = "disjunctive"


class Semantics(Enum):
    CONF = "conf"
    ADM = "adm"
    COMP = "comp"
    PREF = "pref"
    STAB = "stab"
    SEMI_STABLE = "semiSt"
    STAGE = "stag"

    @classmethod
    def parse(cls, text: str) -> "Semantics":
        for member in cls:
            if member.value.lower() == text.lower() or member.name.lower() == text.lower():
                return member
        raise ValidationError(f"unknown semantics '{text}'", ("semantics",))


# The problem statements range over these; pref is supported on top.
CORE_SEMANTICS = (Semantics.CONF, Semantics.ADM, Semantics.COMP, Semantics.STAB)
MAIN_SEMANTICS = CORE_SEMANTICS + (Semantics.SEMI_STABLE, Semantics.STAGE)
ALL_SEMANTICS = tuple(Semantics)


@dataclass(frozen=True)
class Rule:
    """H(r) <- B+(r), not B-(r). An empty head is a constraint."""

    head: FrozenSet[str] = frozenset()
    pos_body: FrozenSet[str] = frozenset()
    neg_body: FrozenSet[str] = frozenset()

    @classmethod
    def make(cls, head: Iterable[str] = (), pos: Iterable[str] = (), neg: Iterable[str] = ()) -> "Rule":
        return cls(frozenset(head), frozenset(pos), frozenset(neg))

    @property
    def atoms(self) -> FrozenSet[str]:
        return self.head | self.pos_body | self.neg_body

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_fact(self) -> bool:
        return len(self.head) == 1 and not self.pos_body and not self.neg_body

    def __str__(self) -> str:
        head = " | ".join(sorted(self.head))
        body = [*sorted(self.pos_body), *(f"not {b}" for b in sorted(self.neg_body))]
        if not body:
            return f"{head}." if head else ":- ."
        return f"{head} :- {', '.join(body)}." if head else f":- {', '.join(body)}."


Condition = Union[Formula, Rule]


@dataclass(frozen=True)
class RejectionCondition:
    """C(a): a tuple of formulas or of rules. The empty condition denotes true."""

    mode: RcMode = RcMode.CLASSICAL
    body: Tuple[Condition, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.body

    @property
    def formulas(self) -> Tuple[Formula, ...]:
        if self.mode is not RcMode.CLASSICAL:
            raise ValidationError("rejection condition is a program, not formulas")
        return self.body

    @property
    def rules(self) -> Tuple[Rule, ...]:
        if self.mode is not RcMode.ASP:
            raise ValidationError("rejection condition is formulas, not a program")
        return self.body

    def variables(self) -> FrozenSet[str]:
        found = set()
        for item in self.body:
            found |= item.atoms if isinstance(item, Rule) else variables(item)
        return frozenset(found)


@dataclass(frozen=True)
class AF:
    """Argumentation framework (A, R); arguments keep declaration order."""

    arguments: Tuple[str, ...]
    attacks: FrozenSet[Attack] = frozenset()

    @classmethod
    def make(cls, arguments: Iterable[str], attacks: Iterable[Attack] = ()) -> "AF":
        return cls(tuple(arguments), frozenset((a, b) for a, b in attacks))

    def attackers(self, a: str) -> FrozenSet[str]:
        return frozenset(b for b, c in self.attacks if c == a)

    def attacked_by(self, a: str) -> FrozenSet[str]:
        return frozenset(c for b, c in self.attacks if b == a)

    def restrict(self, subset: Iterable[str]) -> "AF":
        """The induced sub-framework F[S]."""
        keep = set(subset)
        return AF(
            tuple(a for a in self.arguments if a in keep),
            frozenset((a, b) for a, b in self.attacks if a in keep and b in keep),
        )

    def sorted_attacks(self) -> List[Attack]:
        order = {a: i for i, a in enumerate(self.arguments)}
        return sorted(self.attacks, key=lambda e: (order.get(e[0], -1), order.get(e[1], -1), e))


@dataclass(frozen=True)
class RAF:
    """Rejection augmented AF (A, R, C); C is total, missing entries are empty conditions."""

    af: AF
    rc: Mapping[str, RejectionCondition] = field(default_factory=dict)
    mode: RcMode = RcMode.CLASSICAL

    @classmethod
    def make(
        cls,
        af: AF,
        rc: Optional[Mapping[str, Iterable[Condition]]] = None,
        mode: RcMode = RcMode.CLASSICAL,
    ) -> "RAF":
        conditions = {a: RejectionCondition(mode, tuple((rc or {}).get(a, ()))) for a in af.arguments}
        return cls(af, conditions, mode)

    @property
    def arguments(self) -> Tuple[str, ...]:
        return self.af.arguments

    @property
    def attacks(self) -> FrozenSet[Attack]:
        return self.af.attacks

    def condition(self, a: str) -> RejectionCondition:
        return self.rc.get(a) or RejectionCondition(self.mode)

    def conditions(self, members: Iterable[str]) -> Tuple[Condition, ...]:
        """C(E): the lifted union, in argument order, without duplicates."""
        chosen = set(members)
        seen = set()
        lifted = []
        for a in self.af.arguments:
            if a not in chosen:
                continue
            for item in self.condition(a).body:
                if item not in seen:
                    seen.add(item)
                    lifted.append(item)
        return tuple(lifted)

    def rc_variables(self) -> FrozenSet[str]:
        """var(C(A))."""
        found = set()
        for a in self.af.arguments:
            found |= self.condition(a).variables()
        return frozenset(found)

    def auxiliary_variables(self) -> Tuple[str, ...]:
        """var(C(A)) minus A, sorted."""
        return tuple(sorted(self.rc_variables() - set(self.af.arguments)))


@dataclass(frozen=True)
class CAF:
    """Constrained AF (A, R, phi)."""

    af: AF
    constraint: Formula = TOP


def _check_af(af: AF, path: Tuple[str, ...]) -> None:
    if not af.arguments:
        raise ValidationError("framework has no arguments", path + ("arguments",))
    seen = set()
    for name in af.arguments:
        if not is_identifier(name):
            raise ValidationError(f"invalid argument name {name!r}", path + ("arguments", str(name)))
        if name in RESERVED_NAMES:
            raise ValidationError(f"'{name}' is reserved for a constant", path + ("arguments", name))
        if name in seen:
            raise ValidationError(f"duplicate argument '{name}'", path + ("arguments", name))
        seen.add(name)
    for a, b in af.sorted_attacks():
        for end in (a, b):
            if end not in seen:
                raise ValidationError(f"attack ({a},{b}) uses undeclared argument '{end}'", path + ("attacks", f"{a}->{b}"))


def validate(obj: Union[AF, RAF, CAF]) -> None:
    """Check every type invariant; the first violation is raised with its path."""
    if isinstance(obj, AF):
        _check_af(obj, ())
        return
    if isinstance(obj, CAF):
        _check_af(obj.af, ("af",))
        stray = sorted(variables(obj.constraint) - set(obj.af.arguments))
        if stray:
            raise ValidationError(f"constraint mentions non-argument '{stray[0]}'", ("constraint", stray[0]))
        return
    if not isinstance(obj, RAF):
        raise ValidationError(f"cannot validate {type(obj).__name__}")

    _check_af(obj.af, ("af",))
    declared = set(obj.af.arguments)
    for a in obj.rc:
        if a not in declared:
            raise ValidationError(f"rejection condition for undeclared argument '{a}'", ("rc", str(a)))
    for a in obj.af.arguments:
        cond = obj.condition(a)
        if cond.mode is not obj.mode:
            raise ValidationError(
                f"condition in {cond.mode.value} mode inside a {obj.mode.value} framework", ("rc", a, "mode")
            )
        for i, item in enumerate(cond.body):
            if (obj.mode is RcMode.ASP) != isinstance(item, Rule):
                raise ValidationError(
                    f"{'formula' if obj.mode is RcMode.ASP else 'rule'} in a {obj.mode.value} framework",
                    ("rc", a, str(i)),
                )
            atoms = item.atoms if isinstance(item, Rule) else variables(item)
            for atom in sorted(atoms):
                if not is_identifier(atom):
                    raise ValidationError(f"invalid atom {atom!r}", ("rc", a, str(i), str(atom)))
