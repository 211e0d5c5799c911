"""
Quantified Boolean formulas with a CNF and a DNF part.

The matrix reads (AND of the clauses) AND (OR of the terms); an empty clause list and an
empty term list both mean "true", so either part is optional.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from ..core.formula import Clause, Literal, is_identifier
from ..errors import QbfFormatError

logger = logging.getLogger(__name__)

Term = FrozenSet[Literal]


class Quantifier(Enum):
    EXISTS = "e"
    FORALL = "a"

    @property
    def dual(self) -> "Quantifier":
        return Quantifier.FORALL if self is Quantifier.EXISTS else Quantifier.EXISTS

    @classmethod
    def parse(cls, text: Union[str, "Quantifier"]) -> "Quantifier":
        if isinstance(text, Quantifier):
            return text
        lowered = text.lower()
        if lowered in ("e", "exists"):
            return cls.EXISTS
        if lowered in ("a", "forall"):
            return cls.FORALL
        raise QbfFormatError(f"unknown quantifier '{text}'")


@dataclass(frozen=True)
class Block:
    quantifier: Quantifier
    variables: Tuple[str, ...]


def _flip(group: FrozenSet[Literal]) -> FrozenSet[Literal]:
    return frozenset(l.negate() for l in group)


def _literals(items: Iterable) -> FrozenSet[Literal]:
    found = set()
    for item in items:
        found.add(item if isinstance(item, Literal) else Literal(*item))
    return frozenset(found)


@dataclass(frozen=True)
class QbfInstance:
    """Closed prenex QBF Q1 X1 ... Qn Xn. (cnf AND dnf)."""

    blocks: Tuple[Block, ...]
    cnf: Tuple[Clause, ...] = ()
    dnf: Tuple[Term, ...] = ()

    @classmethod
    def make(
        cls,
        prefix: Sequence[Tuple[Union[str, Quantifier], Iterable[str]]],
        cnf: Iterable[Iterable] = (),
        dnf: Iterable[Iterable] = (),
    ) -> "QbfInstance":
        """Build and check an instance.

        Empty blocks are dropped and adjacent blocks with the same quantifier merged.
        Literals may be given as ``Literal`` or ``(name, polarity)`` pairs.

        Raises:
            QbfFormatError: invalid or repeated variable names, or a free matrix variable.
        """
        blocks: List[Block] = []
        seen = set()
        for quantifier, names in prefix:
            quantifier = Quantifier.parse(quantifier)
            names = tuple(names)
            for name in names:
                if not is_identifier(name):
                    raise QbfFormatError(f"invalid variable name {name!r}")
                if name in seen:
                    raise QbfFormatError(f"variable '{name}' is quantified twice")
                seen.add(name)
            if not names:
                continue
            if blocks and blocks[-1].quantifier is quantifier:
                blocks[-1] = Block(quantifier, blocks[-1].variables + names)
            else:
                blocks.append(Block(quantifier, names))
        instance = cls(
            tuple(blocks),
            tuple(_literals(c) for c in cnf),
            tuple(_literals(t) for t in dnf),
        )
        free = sorted(instance.matrix_variables() - seen)
        if free:
            raise QbfFormatError(f"matrix variable '{free[0]}' is not quantified")
        return instance

    def variables(self) -> Tuple[str, ...]:
        """Quantified variables, outermost first."""
        return tuple(v for block in self.blocks for v in block.variables)

    def matrix_variables(self) -> FrozenSet[str]:
        found = set()
        for part in (self.cnf, self.dnf):
            for group in part:
                found.update(l.atom for l in group)
        return frozenset(found)

    def quantifier_of(self) -> Dict[str, Quantifier]:
        return {v: block.quantifier for block in self.blocks for v in block.variables}

    def shape(self) -> str:
        """Quantifier string such as ``"ea"`` for an exists-forall prefix."""
        return "".join(block.quantifier.value for block in self.blocks)

    @property
    def is_cnf(self) -> bool:
        return not self.dnf

    def negated(self) -> "QbfInstance":
        """Dual quantifiers over the negated matrix; defined when one matrix part is empty."""
        if self.cnf and self.dnf:
            raise QbfFormatError("cannot negate a matrix with both a CNF and a DNF part")
        prefix = [(block.quantifier.dual, block.variables) for block in self.blocks]
        if self.dnf:
            return QbfInstance.make(prefix, cnf=[_flip(t) for t in self.dnf])
        if not self.cnf:
            # the matrix is "true"; one empty clause is "false"
            return QbfInstance.make(prefix, cnf=[frozenset()])
        return QbfInstance.make(prefix, dnf=[_flip(c) for c in self.cnf])

    def split(self, pattern: str) -> Optional[Tuple[Tuple[str, ...], ...]]:
        """Match blocks against a quantifier pattern; missing positions become empty.

        ``split("eae")`` on an ``"ea"`` instance gives (X, Y, ()). Returns None when a
        block cannot be placed.
        """
        groups: List[Tuple[str, ...]] = []
        remaining = list(self.blocks)
        for letter in pattern:
            if remaining and remaining[0].quantifier.value == letter:
                groups.append(remaining.pop(0).variables)
            else:
                groups.append(())
        if remaining:
            return None
        return tuple(groups)
