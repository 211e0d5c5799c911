"""Tseitin transformation with full biconditional definitions."""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple

from ..core.formula import And, Atom, Const, Formula, Implies, Literal, Not, Or, variables


@dataclass(frozen=True)
class TseitinResult:
    """Clauses defining one auxiliary per compound subformula.

    ``output`` is not asserted by ``clauses``; add it as a unit clause to require phi.
    """

    clauses: Tuple[Tuple[Literal, ...], ...]
    aux: Dict[str, Formula]
    output: Literal


class _Namer:
    def __init__(self, taken: Set[str], prefix: str):
        self.taken = taken
        self.prefix = prefix
        self.counter = 0

    def fresh(self) -> str:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def tseitin(phi: Formula, taken: Optional[Iterable[str]] = None, prefix: str = "__ts") -> TseitinResult:
    """Equisatisfiable clause set; every model of var(phi) extends uniquely to the aux variables.

    Atoms and negated atoms need no auxiliary variable; the output is then a literal of phi.
    """
    names = _Namer(set(taken or ()) | set(variables(phi)), prefix)
    clauses: List[Tuple[Literal, ...]] = []
    aux: Dict[str, Formula] = {}
    cache: Dict[Formula, Literal] = {}

    def define(node: Formula) -> Literal:
        if node in cache:
            return cache[node]
        if isinstance(node, Atom):
            result = Literal(node.name, True)
        elif isinstance(node, Not):
            result = define(node.operand).negate()
        elif isinstance(node, Const):
            name = names.fresh()
            aux[name] = node
            clauses.append((Literal(name, node.value),))
            result = Literal(name, True)
        elif isinstance(node, Implies):
            result = define(Or((Not(node.left), node.right)))
            aux_name = result.atom
            aux[aux_name] = node
        else:
            parts = [define(o) for o in node.operands]
            name = names.fresh()
            aux[name] = node
            t = Literal(name, True)
            if isinstance(node, And):
                for p in parts:
                    clauses.append((t.negate(), p))
                clauses.append((t, *(p.negate() for p in parts)))
            else:
                for p in parts:
                    clauses.append((t, p.negate()))
                clauses.append((t.negate(), *parts))
            result = t
        cache[node] = result
        return result

    output = define(phi)
    return TseitinResult(tuple(clauses), aux, output)
