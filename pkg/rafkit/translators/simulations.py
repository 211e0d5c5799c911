"""
Simulations of other formalisms by RAFs.

- AF: every rejection condition is "false", so only the empty set survives rejection trivially
  and ext(G) = ext(F) minus the empty set.
- CAF: C(a) = ~phi, extended for pref/semiSt/stag by a formula stating that no better
  CF-admissible (CF-conflict-free) set exists over primed copies.
- Twofold (sigma, stab): primed copies witness that E restricted to S attacks all of S.
"""

import logging
from typing import Dict, Iterable, List

from ..core.formula import (
    And,
    Atom,
    BOTTOM,
    Formula,
    Implies,
    Not,
    Or,
    conj,
    disj,
    fresh,
    substitute,
    variables,
)
from ..core.model import AF, CAF, RAF, RcMode, Semantics
from ..errors import UnsupportedClassError, ValidationError

logger = logging.getLogger(__name__)

CAF_SEMANTICS = (
    Semantics.ADM,
    Semantics.STAB,
    Semantics.COMP,
    Semantics.PREF,
    Semantics.SEMI_STABLE,
    Semantics.STAGE,
)


def af_to_raf(af: AF) -> RAF:
    return RAF.make(af, {a: [BOTTOM] for a in af.arguments}, RcMode.CLASSICAL)


def caf_query_semantics(sigma: Semantics) -> Semantics:
    """RAF semantics under which caf_to_raf(CF, sigma) yields the CF-sigma extensions."""
    if sigma in (Semantics.PREF, Semantics.SEMI_STABLE):
        return Semantics.ADM
    if sigma is Semantics.STAGE:
        return Semantics.CONF
    return sigma


class _Copies:
    """Fresh primed names for every argument, avoiding the framework's namespace."""

    def __init__(self, af: AF, suffixes: Iterable[str]):
        taken = set(af.arguments)
        self.names: Dict[str, Dict[str, str]] = {}
        for suffix in suffixes:
            table = {}
            for a in af.arguments:
                name = fresh(f"{a}{suffix}", taken)
                taken.add(name)
                table[a] = name
            self.names[suffix] = table

    def atom(self, suffix: str, a: str) -> Formula:
        return Atom(self.names[suffix][a])


def _iff(left: Formula, right: Formula) -> Formula:
    return And((Implies(left, right), Implies(right, left)))


def _primed_conflict_free(af: AF, p: _Copies) -> List[Formula]:
    return [Or((Not(p.atom("__p", a)), Not(p.atom("__p", b)))) for a, b in af.sorted_attacks()]


def _primed_defense(af: AF, p: _Copies) -> List[Formula]:
    parts = []
    for b, a in af.sorted_attacks():
        defenders = [p.atom("__p", c) for c, d in af.sorted_attacks() if d == b]
        parts.append(Or((Not(p.atom("__p", a)), disj(defenders))))
    return parts


def _constraint_on_copies(caf: CAF, p: _Copies) -> List[Formula]:
    """(2): a' <-> a'' and phi over the double-primed copies."""
    bridge = [_iff(p.atom("__p", a), p.atom("__pp", a)) for a in caf.af.arguments]
    renamed = substitute(caf.constraint, p.names["__pp"])
    return bridge + [renamed]


def psi_pref(caf: CAF, p: _Copies) -> Formula:
    """A CF-admissible D over primed copies that strictly contains E."""
    af = caf.af
    superset = [Implies(Atom(a), p.atom("__p", a)) for a in af.arguments]
    strict = disj(And((p.atom("__p", a), Not(Atom(a)))) for a in af.arguments)
    return conj(
        _primed_conflict_free(af, p) + _primed_defense(af, p) + _constraint_on_copies(caf, p) + superset + [strict]
    )


def psi_range(caf: CAF, p: _Copies, admissible: bool) -> Formula:
    """A CF-admissible (or CF-conflict-free) D whose range strictly contains that of E."""
    af = caf.af
    parts = _primed_conflict_free(af, p)
    if admissible:
        parts += _primed_defense(af, p)
    parts += _constraint_on_copies(caf, p)
    for a in af.arguments:
        attackers = [b for b, c in af.sorted_attacks() if c == a]
        parts.append(_iff(p.atom("__d", a), disj(Atom(b) for b in attackers)))
        parts.append(_iff(p.atom("__dp", a), disj(p.atom("__p", b) for b in attackers)))
    for a in af.arguments:
        covered = Or((p.atom("__p", a), p.atom("__dp", a)))
        parts.append(Implies(Atom(a), covered))
        parts.append(Implies(p.atom("__d", a), covered))
    parts.append(
        disj(
            conj([Or((p.atom("__p", a), p.atom("__dp", a))), Not(Atom(a)), Not(p.atom("__d", a))])
            for a in af.arguments
        )
    )
    return conj(parts)


def caf_to_raf(caf: CAF, sigma: Semantics) -> RAF:
    """RAF whose caf_query_semantics(sigma) extensions are the non-empty CF-sigma extensions."""
    if sigma not in CAF_SEMANTICS:
        raise UnsupportedClassError(f"no CAF simulation for {sigma.value}")
    stray = variables(caf.constraint) - set(caf.af.arguments)
    if stray:
        raise ValidationError(f"constraint mentions non-argument '{sorted(stray)[0]}'", ("constraint",))
    reject = Not(caf.constraint)
    if sigma in (Semantics.ADM, Semantics.STAB, Semantics.COMP):
        condition = reject
    else:
        p = _Copies(caf.af, ("__p", "__pp", "__d", "__dp"))
        if sigma is Semantics.PREF:
            better = psi_pref(caf, p)
        else:
            better = psi_range(caf, p, admissible=sigma is Semantics.SEMI_STABLE)
        condition = Or((reject, better))
    logger.debug("CAF simulation for %s over %d arguments", sigma.value, len(caf.af.arguments))
    return RAF.make(caf.af, {a: [condition] for a in caf.af.arguments}, RcMode.CLASSICAL)


def twofold_to_raf(af: AF, shrinking: Iterable[str]) -> RAF:
    """RAF whose sigma-extensions are the twofold (sigma, stab)-extensions, up to the empty set."""
    inside = set(shrinking)
    unknown = inside - set(af.arguments)
    if unknown:
        raise ValidationError(f"shrinking mentions non-argument '{sorted(unknown)[0]}'", ("shrinking",))
    if not inside:
        # the empty sub-framework is stable for every E
        return af_to_raf(af)
    p = _Copies(af, ("__p",))
    uncovered = disj(Not(p.atom("__p", x)) for x in af.arguments if x in inside)
    rc = {}
    for a in af.arguments:
        if a not in inside:
            continue
        hits = [p.atom("__p", b) for b in sorted(af.attacked_by(a), key=af.arguments.index)]
        rc[a] = [conj([p.atom("__p", a)] + hits + [uncovered])]
    return RAF.make(af, rc, RcMode.CLASSICAL)
