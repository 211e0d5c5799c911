"""
Generators turning quantified formulas into RAFs whose consistency (or credulous
acceptance) answers the formula.

Key Features:
- SAT to simple RCs (read through stable semantics)
- exists-forall with a DNF matrix to propositional or tight RCs (conflict-free semantics)
- exists-forall-exists with a CNF matrix to disjunctive RCs via saturation
- forall-exists formulas to credulous semi-stable / stage acceptance of a query argument
- Decompositions of the generated RAF built from a decomposition of the matrix
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..config import Caps
from ..core.formula import Atom, Clause, Not, fresh, term_formula
from ..core.model import AF, RAF, Attack, RcClass, RcMode, Rule, Semantics
from ..decomposition.graph import primal_graph
from ..decomposition.td import TreeDecomposition, validate_td
from ..errors import QbfFormatError, UnsupportedClassError
from ..qbf.model import QbfInstance
from ..semantics.raf import Maximality, cons, cred

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HardnessInstance:
    """A generated RAF together with how to read the source formula's truth off it.

    Without ``query`` the formula is true iff ``cons`` holds under ``semantics``; with a
    query argument it is true iff the query is *not* credulously accepted.
    """

    raf: RAF
    source: QbfInstance
    rc_class: RcClass
    semantics: Semantics
    query: Optional[str] = None
    maximality: Maximality = Maximality.BASE
    primes: Dict[str, str] = field(default_factory=dict)
    clause_arguments: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()

    def decide(self, caps: Optional[Caps] = None, semantics: Optional[Semantics] = None) -> bool:
        sigma = semantics or self.semantics
        if self.query is None:
            return cons(self.raf, sigma, caps, self.maximality)
        return not cred(self.raf, sigma, self.query, caps, self.maximality)


class _Names:
    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)

    def new(self, base: str) -> str:
        name = fresh(base, self.taken)
        self.taken.add(name)
        return name

    def primes(self, variables: Sequence[str]) -> Dict[str, str]:
        return {v: self.new(f"{v}__p") for v in variables}


def _split(source: QbfInstance, pattern: str, matrix: str) -> Tuple[Tuple[str, ...], ...]:
    groups = source.split(pattern)
    wanted = {"cnf": not source.dnf, "dnf": not source.cnf}[matrix]
    if groups is None or not wanted:
        raise QbfFormatError(f"expected a {pattern.upper()} prefix with a {matrix.upper()} matrix, got {source.shape().upper() or 'no'} prefix")
    return groups


def _choice_framework(xs: Sequence[str], primes: Dict[str, str]) -> Tuple[List[str], List[Attack]]:
    arguments: List[str] = []
    attacks: List[Attack] = []
    for x in xs:
        arguments += [x, primes[x]]
        attacks += [(x, primes[x]), (primes[x], x)]
    return arguments, attacks


def _literal_argument(literal, primes: Dict[str, str]) -> str:
    return literal.atom if literal.positive else primes[literal.atom]


def saturation_program(
    clauses: Iterable[Clause],
    guessed: Sequence[str],
    saturated: Sequence[str],
    primes: Dict[str, str],
    flag: str,
) -> List[Rule]:
    """Program with an answer set iff some guess makes every saturated choice falsify a clause.

    Guessed atoms v / v' choose by default negation; saturated atoms are split disjunctively
    and saturated by ``flag``, which must hold. Atoms outside ``primes`` are fixed from the
    outside, so their falsity is read directly (``not x`` for x, ``x`` for ~x).
    """
    rules: List[Rule] = []
    for v in guessed:
        rules += [Rule.make(head=[v], neg=[primes[v]]), Rule.make(head=[primes[v]], neg=[v])]
    for v in saturated:
        rules += [
            Rule.make(head=[v, primes[v]]),
            Rule.make(head=[v], pos=[flag]),
            Rule.make(head=[primes[v]], pos=[flag]),
        ]
    rules.append(Rule.make(neg=[flag]))
    for clause in clauses:
        pos: List[str] = []
        neg: List[str] = []
        for lit in sorted(clause):
            if lit.atom in primes:
                pos.append(primes[lit.atom] if lit.positive else lit.atom)
            elif lit.positive:
                neg.append(lit.atom)
            else:
                pos.append(lit.atom)
        rules.append(Rule.make(head=[flag], pos=pos, neg=neg))
    return list(dict.fromkeys(rules))


def _sat_instance(source: QbfInstance) -> HardnessInstance:
    (xs,) = _split(source, "e", "cnf")
    if not xs:
        raise QbfFormatError("formula has no variables")
    names = _Names(source.variables())
    primes = names.primes(xs)
    arguments, attacks = _choice_framework(xs, primes)
    clause_arguments = []
    for i, clause in enumerate(source.cnf, start=1):
        v = names.new(f"v{i}")
        literals = tuple(_literal_argument(l, primes) for l in sorted(clause))
        arguments.append(v)
        attacks += [(a, v) for a in literals] + [(v, v)]
        clause_arguments.append((v, literals))
    af = AF.make(arguments, attacks)
    raf = RAF.make(af, {a: [Not(Atom(a))] for a in arguments}, RcMode.CLASSICAL)
    return HardnessInstance(
        raf, source, RcClass.SIMPLE, Semantics.STAB,
        primes=primes, clause_arguments=tuple(clause_arguments),
    )


def _check_terms(source: QbfInstance, xs: Sequence[str], max_literals: Optional[int]) -> None:
    if not source.dnf:
        raise QbfFormatError("matrix has no terms")
    existential = set(xs)
    for term in source.dnf:
        if not any(l.atom in existential for l in term):
            raise QbfFormatError("every term must mention an outermost existential variable")
        if max_literals is not None and len(term) > max_literals:
            raise QbfFormatError(f"term with {len(term)} literals, at most {max_literals} allowed")


def _qsat2_instance(source: QbfInstance, rc_class: RcClass) -> HardnessInstance:
    xs, ys = _split(source, "ea", "dnf")
    if not xs:
        raise QbfFormatError("no existential variables")
    _check_terms(source, xs, 3 if rc_class is RcClass.PROPOSITIONAL else None)
    names = _Names(source.variables())
    primes = names.primes(xs)
    arguments, attacks = _choice_framework(xs, primes)
    af = AF.make(arguments, attacks)

    if rc_class is RcClass.PROPOSITIONAL:
        rc: Dict[str, list] = {}
        for x in xs:
            body = [Not(term_formula(t)) for t in source.dnf if any(l.atom == x for l in t)]
            rc[x] = body
            rc[primes[x]] = list(body)
        raf = RAF.make(af, rc, RcMode.CLASSICAL)
        return HardnessInstance(raf, source, rc_class, Semantics.CONF, primes=primes)

    # tight: a guess over Y per term, and a constraint killing every guess that makes the term true
    atom_primes = {**primes, **names.primes(ys)}
    rules: Dict[str, List[Rule]] = {a: [] for a in arguments}
    for term in source.dnf:
        body = [_literal_argument(l, atom_primes) for l in sorted(term)]
        group: List[Rule] = []
        for l in sorted(term):
            if l.atom in ys:
                y, y_p = l.atom, atom_primes[l.atom]
                group += [Rule.make(head=[y], neg=[y_p]), Rule.make(head=[y_p], neg=[y])]
        group.append(Rule.make(pos=body))
        for a in body:
            if a not in rules:
                continue
            for rule in group:
                if rule not in rules[a]:
                    rules[a].append(rule)
    raf = RAF.make(af, rules, RcMode.ASP)
    return HardnessInstance(raf, source, rc_class, Semantics.CONF, primes=atom_primes)


def _qsat3_instance(source: QbfInstance) -> HardnessInstance:
    xs, ys, zs = _split(source, "eae", "cnf")
    if not xs:
        raise QbfFormatError("no outermost existential variables")
    names = _Names(source.variables())
    primes = names.primes(xs)
    arguments, attacks = _choice_framework(xs, primes)
    inner = names.primes(list(ys) + list(zs))
    program = saturation_program(source.cnf, ys, zs, inner, names.new("sat"))
    raf = RAF.make(AF.make(arguments, attacks), {a: program for a in arguments}, RcMode.ASP)
    return HardnessInstance(raf, source, RcClass.DISJUNCTIVE, Semantics.CONF, primes=primes)


def hardness_instance(source: QbfInstance, rc_class: RcClass) -> HardnessInstance:
    """RAF for the consistency problem of one rejection-condition class.

    - simple: existential CNF; satisfiable iff a stable extension exists
    - propositional: exists X forall Y over a 3-DNF; true iff a conflict-free extension exists
    - tight: as propositional with any DNF; C(a) are tight programs
    - disjunctive: exists X forall Y exists Z over a CNF; saturation programs

    Raises:
        QbfFormatError: the prefix or matrix does not fit the class.
        UnsupportedClassError: no generator for the class (normal).
    """
    rc_class = RcClass(rc_class)
    if rc_class is RcClass.SIMPLE:
        instance = _sat_instance(source)
    elif rc_class in (RcClass.PROPOSITIONAL, RcClass.TIGHT):
        instance = _qsat2_instance(source, rc_class)
    elif rc_class is RcClass.DISJUNCTIVE:
        instance = _qsat3_instance(source)
    else:
        raise UnsupportedClassError(f"no consistency generator for {rc_class.value} conditions")
    logger.debug(
        "Generated %s instance: %d arguments, %d attacks",
        rc_class.value, len(instance.raf.arguments), len(instance.raf.attacks),
    )
    return instance


def cred_hardness_instance(source: QbfInstance, rc_class: RcClass) -> HardnessInstance:
    """RAF and query t' such that t' is in no semi-stable (stage) extension iff the formula holds.

    - simple: forall Y exists Z over a CNF, clause arguments attack t, C(a) = {~a}
    - propositional: forall Y exists Z forall X over a DNF, C(t) = {~c | c a term}, C(a) = {t}
    - disjunctive: forall Y exists Z forall X exists W over a CNF, C(t) a saturation program,
      C(a) = {:- not t}

    The propositional and disjunctive readings hold with maximality among RAF extensions.
    """
    rc_class = RcClass(rc_class)
    if rc_class is RcClass.SIMPLE:
        ys, zs = _split(source, "ae", "cnf")
    elif rc_class is RcClass.PROPOSITIONAL:
        ys, zs, xs = _split(source, "aea", "dnf")
        if not source.dnf:
            raise QbfFormatError("matrix has no terms")
    elif rc_class is RcClass.DISJUNCTIVE:
        ys, zs, xs, ws = _split(source, "aeae", "cnf")
    else:
        raise UnsupportedClassError(f"no credulous generator for {rc_class.value} conditions")

    names = _Names(source.variables())
    t, t_prime, b = names.new("t"), names.new("t__p"), names.new("b")
    primes = names.primes(list(ys) + list(zs))
    arguments = [t, t_prime, b]
    attacks: List[Attack] = [(t, t_prime), (t_prime, t), (t, b), (b, b)]
    for y in ys:
        hat, hat_prime = names.new(f"{y}__h"), names.new(f"{y}__hp")
        arguments += [y, primes[y], hat, hat_prime]
        attacks += [
            (y, primes[y]), (primes[y], y),
            (y, hat), (primes[y], hat_prime), (hat, hat), (hat_prime, hat_prime),
        ]
    for z in zs:
        arguments += [z, primes[z]]
        attacks += [(z, primes[z]), (primes[z], z)]

    clause_arguments = []
    if rc_class is RcClass.SIMPLE:
        for i, clause in enumerate(source.cnf, start=1):
            c = names.new(f"c{i}")
            literals = tuple(_literal_argument(l, primes) for l in sorted(clause))
            arguments.append(c)
            attacks.append((c, t))
            attacks += [(a, c) for a in literals]
            clause_arguments.append((c, literals))
        af = AF.make(arguments, attacks)
        raf = RAF.make(af, {a: [Not(Atom(a))] for a in arguments}, RcMode.CLASSICAL)
        maximality = Maximality.BASE
    elif rc_class is RcClass.PROPOSITIONAL:
        rc = {a: [Atom(t)] for a in arguments if a != t}
        rc[t] = [Not(term_formula(term)) for term in source.dnf]
        raf = RAF.make(AF.make(arguments, attacks), rc, RcMode.CLASSICAL)
        maximality = Maximality.RAF
    else:
        inner = names.primes(list(xs) + list(ws))
        rc = {a: [Rule.make(neg=[t])] for a in arguments if a != t}
        rc[t] = saturation_program(source.cnf, xs, ws, inner, names.new("sat"))
        raf = RAF.make(AF.make(arguments, attacks), rc, RcMode.ASP)
        maximality = Maximality.RAF

    logger.debug("Generated credulous %s instance with %d arguments", rc_class.value, len(arguments))
    return HardnessInstance(
        raf, source, rc_class, Semantics.SEMI_STABLE,
        query=t_prime, maximality=maximality, primes=primes,
        clause_arguments=tuple(clause_arguments),
    )


def hardness_td(instance: HardnessInstance, source_td: TreeDecomposition) -> TreeDecomposition:
    """Decomposition of primal(G) from a decomposition of the matrix's primal graph.

    Every bag is doubled with the primed copies of its variables (so |bag'| <= 2|bag|);
    for simple conditions each clause argument gets its own leaf next to a bag holding the
    clause's literal arguments, keeping the width at most 2w+1.
    """
    if instance.query is not None or instance.rc_class not in (
        RcClass.SIMPLE, RcClass.PROPOSITIONAL, RcClass.TIGHT,
    ):
        raise UnsupportedClassError("decompositions are built for simple, propositional and tight generators")
    validate_td(primal_graph(instance.source), source_td)
    graph = primal_graph(instance.raf)
    vertices = set(graph.nodes)
    bags = {
        node: frozenset((bag | {instance.primes[v] for v in bag if v in instance.primes}) & vertices)
        for node, bag in source_td.bags.items()
    }
    children = {node: list(source_td.children.get(node, ())) for node in source_td.bags}
    next_id = max(bags) + 1
    order = source_td.nodes()
    for argument, literals in instance.clause_arguments:
        host = next((n for n in order if set(literals) <= bags[n]), source_td.root)
        bags[next_id] = frozenset(literals) | {argument}
        children[host].append(next_id)
        children[next_id] = []
        next_id += 1
    td = TreeDecomposition(bags, {n: tuple(c) for n, c in children.items()}, source_td.root)
    validate_td(graph, td)
    logger.debug("Hardness TD: source width %d, constructed width %d", source_td.width, td.width)
    return td
