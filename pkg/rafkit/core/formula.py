"""
Boolean formulas and literals.

Formulas are immutable trees; ``And``/``Or`` are n-ary and keep their operands in the
order given, so a rendered formula parses back to the same tree.
"""

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, NamedTuple, Tuple, Union

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_identifier(name: str) -> bool:
    return isinstance(name, str) and IDENTIFIER.match(name) is not None


class Literal(NamedTuple):
    """An atom or its negation."""

    atom: str
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else f"~{self.atom}"


Clause = FrozenSet[Literal]


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    operands: Tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    operands: Tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Const, Atom, Not, And, Or, Implies]

TOP = Const(True)
BOTTOM = Const(False)


def conj(operands: Iterable[Formula]) -> Formula:
    """Conjunction that collapses the empty and singleton cases."""
    ops = tuple(operands)
    if not ops:
        return TOP
    if len(ops) == 1:
        return ops[0]
    return And(ops)


def disj(operands: Iterable[Formula]) -> Formula:
    """Disjunction that collapses the empty and singleton cases."""
    ops = tuple(operands)
    if not ops:
        return BOTTOM
    if len(ops) == 1:
        return ops[0]
    return Or(ops)


def negate(phi: Formula) -> Formula:
    return Not(phi)


def literal_formula(lit: Literal) -> Formula:
    return Atom(lit.atom) if lit.positive else Not(Atom(lit.atom))


def clause_formula(clause: Iterable[Literal]) -> Formula:
    return disj(literal_formula(l) for l in sorted(clause))


def term_formula(term: Iterable[Literal]) -> Formula:
    return conj(literal_formula(l) for l in sorted(term))


def variables(phi: Formula) -> FrozenSet[str]:
    """var(phi): the atom leaves of phi."""
    found = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            found.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.extend(node.operands)
        elif isinstance(node, Implies):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(found)


def substitute(phi: Formula, mapping) -> Formula:
    """Rename atoms; ``mapping`` is a dict or a callable on atom names."""
    rename = mapping if callable(mapping) else (lambda n: mapping.get(n, n))
    if isinstance(phi, Atom):
        return Atom(rename(phi.name))
    if isinstance(phi, Not):
        return Not(substitute(phi.operand, rename))
    if isinstance(phi, And):
        return And(tuple(substitute(o, rename) for o in phi.operands))
    if isinstance(phi, Or):
        return Or(tuple(substitute(o, rename) for o in phi.operands))
    if isinstance(phi, Implies):
        return Implies(substitute(phi.left, rename), substitute(phi.right, rename))
    return phi


# Binding strength used by render: higher binds tighter.
_PRECEDENCE = {Implies: 1, Or: 2, And: 3}


def render_formula(phi: Formula) -> str:
    """Render in the instance grammar (``~ & | ->``, ``true``/``false``)."""
    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Not):
        inner = render_formula(phi.operand)
        if isinstance(phi.operand, (And, Or, Implies)):
            inner = f"({inner})"
        return f"~{inner}"
    if isinstance(phi, (And, Or)):
        symbol = " & " if isinstance(phi, And) else " | "
        parts = []
        for operand in phi.operands:
            text = render_formula(operand)
            if type(operand) in _PRECEDENCE and _PRECEDENCE[type(operand)] <= _PRECEDENCE[type(phi)]:
                text = f"({text})"
            parts.append(text)
        return symbol.join(parts)
    left = render_formula(phi.left)
    if isinstance(phi.left, Implies):
        left = f"({left})"
    return f"{left} -> {render_formula(phi.right)}"


def fresh(base: str, taken) -> str:
    """``base``, or ``base`` with underscores appended until it is not in ``taken``."""
    name = base
    while name in taken:
        name += "_"
    return name
