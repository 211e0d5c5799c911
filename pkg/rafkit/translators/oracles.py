"""Brute-force reference semantics for constrained AFs and twofold extensions."""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from ..config import Caps
from ..core.model import AF, CAF, Semantics
from ..logic.classical import evaluate
from ..semantics.af import (
    base_extension_masks,
    check_cap,
    compiled,
    maximal_by_range,
    maximal_by_subset,
    satisfies,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwofoldQuery:
    """Shrinking S of F with an outer semantics sigma1 and an inner sigma2 on F[S]."""

    af: AF
    shrinking: Tuple[str, ...]
    sigma1: Semantics
    sigma2: Semantics = Semantics.STAB


def _sorted_sets(sets) -> List[FrozenSet[str]]:
    return sorted(sets, key=lambda s: (len(s), tuple(sorted(s))))


def completion_satisfies(caf: CAF, members: FrozenSet[str]) -> bool:
    """The completion E plus {~a | a not in E} satisfies the constraint."""
    return evaluate(caf.constraint, {a: a in members for a in caf.af.arguments})


def caf_oracle(caf: CAF, sigma: Semantics, caps: Optional[Caps] = None) -> List[FrozenSet[str]]:
    """CF-extensions by enumeration.

    conf/adm/comp/stab: the base property plus a satisfied completion. pref is subset-maximal,
    semiSt range-maximal among CF-admissible sets; stag is range-maximal among CF-conflict-free sets.
    """
    check_cap(caf.af, caps)
    bits = compiled(caf.af)

    def accepted(family: Semantics) -> List[int]:
        return [
            m for m in base_extension_masks(caf.af, family)
            if completion_satisfies(caf, bits.members(m))
        ]

    if sigma in (Semantics.CONF, Semantics.ADM, Semantics.COMP, Semantics.STAB):
        masks = accepted(sigma)
    elif sigma is Semantics.PREF:
        masks = maximal_by_subset(accepted(Semantics.ADM))
    elif sigma is Semantics.SEMI_STABLE:
        masks = maximal_by_range(accepted(Semantics.ADM), bits.range)
    else:
        masks = maximal_by_range(accepted(Semantics.CONF), bits.range)
    return _sorted_sets(bits.members(m) for m in masks)


def twofold_oracle(query: TwofoldQuery, caps: Optional[Caps] = None) -> List[FrozenSet[str]]:
    """E with E a sigma1-extension of F and E restricted to S a sigma2-extension of F[S]."""
    af = query.af
    check_cap(af, caps)
    bits = compiled(af)
    inner = af.restrict(query.shrinking)
    shrink = set(query.shrinking)
    found = []
    for m in base_extension_masks(af, query.sigma1):
        members = bits.members(m)
        if satisfies(inner, members & shrink, query.sigma2, caps):
            found.append(members)
    return _sorted_sets(found)
