"""
QDIMACS, DIMACS and QCIR-G14 serialization.

Variables are numbered with a pysat ``IDPool`` in prefix order and listed as
``c <id> <name>`` comment lines, which the readers use to restore names. Besides the
standard format the QDIMACS reader and writer accept ``t <lits> 0`` lines for DNF terms.
"""

import logging
from typing import Dict, List, Optional, Tuple

from pysat.formula import IDPool

from ..core.formula import Literal, fresh, is_identifier
from ..errors import ParseError, QbfFormatError
from .model import QbfInstance, Quantifier

logger = logging.getLogger(__name__)


# numbers follow the prefix, outermost block first
def _pool(qbf: QbfInstance) -> IDPool:
    pool = IDPool()
    for v in qbf.variables():
        pool.id(v)
    return pool


def variable_numbers(qbf: QbfInstance) -> Dict[str, int]:
    """The integer each variable gets in QDIMACS output."""
    pool = _pool(qbf)
    return {v: pool.id(v) for v in qbf.variables()}


def _encode(pool: IDPool, group) -> str:
    numbers = sorted((pool.id(l.atom) if l.positive else -pool.id(l.atom) for l in group), key=lambda n: (abs(n), n))
    return " ".join(str(n) for n in numbers + [0])


def _header_comments(qbf: QbfInstance, pool: IDPool) -> List[str]:
    return [f"c {pool.id(v)} {v}" for v in qbf.variables()]


def write_qdimacs(qbf: QbfInstance, names: bool = True, allow_terms: bool = False) -> str:
    """QDIMACS text, outermost block first.

    Raises:
        QbfFormatError: the instance has a DNF part and ``allow_terms`` is off.
    """
    if qbf.dnf and not allow_terms:
        raise QbfFormatError("QDIMACS needs a CNF matrix; apply prenex_cnf first")
    pool = _pool(qbf)
    lines = _header_comments(qbf, pool) if names else []
    lines.append(f"p cnf {len(qbf.variables())} {len(qbf.cnf)}")
    for block in qbf.blocks:
        ids = " ".join(str(pool.id(v)) for v in block.variables)
        lines.append(f"{block.quantifier.value} {ids} 0")
    lines += [_encode(pool, c) for c in qbf.cnf]
    lines += ["t " + _encode(pool, t) for t in qbf.dnf]
    return "\n".join(lines) + "\n"


def write_dimacs(qbf: QbfInstance, names: bool = True) -> str:
    """DIMACS CNF of a purely existential instance."""
    if qbf.dnf or any(b.quantifier is Quantifier.FORALL for b in qbf.blocks):
        raise QbfFormatError("DIMACS holds existential CNF formulas only")
    pool = _pool(qbf)
    lines = _header_comments(qbf, pool) if names else []
    lines.append(f"p cnf {len(qbf.variables())} {len(qbf.cnf)}")
    lines += [_encode(pool, c) for c in qbf.cnf]
    return "\n".join(lines) + "\n"


def _numbers(parts: List[str], lineno: int, source: str) -> List[int]:
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got '{' '.join(parts)}'", lineno, 1, source)
    if not values or values[-1] != 0:
        raise ParseError("line must end with 0", lineno, 1, source)
    return values[:-1]


def read_qdimacs(text: str, source: str = "<qdimacs>") -> QbfInstance:
    """Parse QDIMACS (with optional ``t`` term lines); free variables join an outermost
    existential block."""
    names: Dict[int, str] = {}
    declared: Optional[Tuple[int, int]] = None
    prefix: List[Tuple[Quantifier, List[int]]] = []
    clauses: List[List[int]] = []
    terms: List[List[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        head = parts[0]
        if head == "c":
            if len(parts) == 3 and parts[1].isdigit() and is_identifier(parts[2]):
                names[int(parts[1])] = parts[2]
            continue
        if head == "p":
            if len(parts) != 4 or parts[1] != "cnf" or not parts[2].isdigit() or not parts[3].isdigit():
                raise ParseError("problem line must be 'p cnf <vars> <clauses>'", lineno, 1, source)
            declared = (int(parts[2]), int(parts[3]))
            continue
        if declared is None:
            raise ParseError("content before the problem line", lineno, 1, source)
        if head in ("e", "a"):
            if clauses or terms:
                raise ParseError("quantifier line after the matrix", lineno, 1, source)
            prefix.append((Quantifier(head), _numbers(parts[1:], lineno, source)))
        elif head == "t":
            terms.append(_numbers(parts[1:], lineno, source))
        else:
            clauses.append(_numbers(parts, lineno, source))
    if declared is None:
        raise ParseError("missing problem line", 1, 1, source)
    n_vars, n_clauses = declared
    if len(clauses) != n_clauses:
        raise ParseError(f"problem line announces {n_clauses} clauses, found {len(clauses)}", 1, 1, source)

    used = {abs(n) for group in clauses + terms for n in group} | {n for _, ids in prefix for n in ids}
    for n in sorted(used):
        if n < 1 or n > n_vars:
            raise ParseError(f"variable {n} outside 1..{n_vars}", 1, 1, source)
    taken = set(names.values())
    for n in sorted(used):
        if n not in names:
            names[n] = fresh(f"x{n}", taken)
            taken.add(names[n])

    quantified = {n for _, ids in prefix for n in ids}
    free = sorted(used - quantified)
    blocks = [(Quantifier.EXISTS, [names[n] for n in free])] if free else []
    blocks += [(q, [names[n] for n in ids]) for q, ids in prefix]

    def literal(n: int) -> Literal:
        return Literal(names[abs(n)], n > 0)

    instance = QbfInstance.make(
        blocks,
        cnf=[[literal(n) for n in c] for c in clauses],
        dnf=[[literal(n) for n in t] for t in terms],
    )
    logger.debug("Read QBF %s with %d clauses and %d terms", instance.shape(), len(clauses), len(terms))
    return instance


def read_dimacs(text: str, source: str = "<dimacs>") -> QbfInstance:
    """A DIMACS CNF as an existential QBF over all declared variables."""
    instance = read_qdimacs(text, source)
    if instance.dnf or any(b.quantifier is Quantifier.FORALL for b in instance.blocks):
        raise QbfFormatError("DIMACS input must not carry quantifiers or terms")
    return instance


def write_qcir(qbf: QbfInstance) -> str:
    """QCIR-G14 keeping the CNF and DNF structure as gates."""
    taken = set(qbf.variables())
    counter = 0

    def gate() -> str:
        nonlocal counter
        counter += 1
        name = fresh(f"g{counter}", taken)
        taken.add(name)
        return name

    def literal(l: Literal) -> str:
        return l.atom if l.positive else f"-{l.atom}"

    lines = ["#QCIR-G14"]
    for block in qbf.blocks:
        keyword = "exists" if block.quantifier is Quantifier.EXISTS else "forall"
        lines.append(f"{keyword}({', '.join(block.variables)})")
    body: List[str] = []
    clause_gates = []
    for clause in qbf.cnf:
        g = gate()
        clause_gates.append(g)
        body.append(f"{g} = or({', '.join(literal(l) for l in sorted(clause))})")
    term_gates = []
    for term in qbf.dnf:
        g = gate()
        term_gates.append(g)
        body.append(f"{g} = and({', '.join(literal(l) for l in sorted(term))})")
    top = []
    cnf_gate = gate()
    body.append(f"{cnf_gate} = and({', '.join(clause_gates)})")
    top.append(cnf_gate)
    if qbf.dnf:
        dnf_gate = gate()
        body.append(f"{dnf_gate} = or({', '.join(term_gates)})")
        top.append(dnf_gate)
    output = gate()
    body.append(f"{output} = and({', '.join(top)})")
    lines.append(f"output({output})")
    lines += body
    return "\n".join(lines) + "\n"
