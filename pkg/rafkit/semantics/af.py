"""
Dung semantics on argumentation frameworks.

Sets are bit masks indexed by argument declaration order. Enumeration walks the
conflict-free sets depth-first and filters; preferred, semi-stable and stage extensions
are the maximal elements of the admissible / conflict-free families.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..config import Caps
from ..core.model import AF, Semantics
from ..errors import CapExceededError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Extension:
    """An accepted set together with its range S+."""

    members: FrozenSet[str]
    range: FrozenSet[str]

    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        return (len(self.members), tuple(sorted(self.members)))

    def to_dict(self) -> Dict[str, List[str]]:
        return {"extension": sorted(self.members), "range": sorted(self.range)}


class BitFramework:
    """An AF compiled to attack masks."""

    def __init__(self, af: AF):
        self.af = af
        self.names = af.arguments
        self.index = {a: i for i, a in enumerate(self.names)}
        self.full = (1 << len(self.names)) - 1
        self.attacks_out = [0] * len(self.names)
        self.attacks_in = [0] * len(self.names)
        for a, b in af.attacks:
            self.attacks_out[self.index[a]] |= 1 << self.index[b]
            self.attacks_in[self.index[b]] |= 1 << self.index[a]

    def mask(self, members: Iterable[str]) -> int:
        m = 0
        for a in members:
            if a not in self.index:
                raise ValidationError(f"'{a}' is not an argument of the framework", ("arguments", str(a)))
            m |= 1 << self.index[a]
        return m

    def members(self, mask: int) -> FrozenSet[str]:
        return frozenset(a for i, a in enumerate(self.names) if mask >> i & 1)

    def attacked(self, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= self.attacks_out[i]
            mask >>= 1
            i += 1
        return out

    def range(self, mask: int) -> int:
        return mask | self.attacked(mask)

    def conflict_free(self, mask: int) -> bool:
        return self.attacked(mask) & mask == 0

    def defended(self, mask: int) -> int:
        hit = self.attacked(mask)
        out = 0
        for i in range(len(self.names)):
            if self.attacks_in[i] & ~hit == 0:
                out |= 1 << i
        return out

    def admissible(self, mask: int) -> bool:
        return self.conflict_free(mask) and mask & ~self.defended(mask) == 0

    def complete(self, mask: int) -> bool:
        return self.conflict_free(mask) and self.defended(mask) == mask

    def stable(self, mask: int) -> bool:
        return self.conflict_free(mask) and self.range(mask) == self.full

    def conflict_free_sets(self) -> List[int]:
        """All conflict-free masks, found depth-first with conflict pruning."""
        n = len(self.names)
        found: List[int] = []

        def walk(i: int, mask: int) -> None:
            if i == n:
                found.append(mask)
                return
            walk(i + 1, mask)
            bit = 1 << i
            if self.attacks_out[i] & (mask | bit) or self.attacks_in[i] & mask:
                return
            walk(i + 1, mask | bit)

        walk(0, 0)
        return found


def maximal_by_subset(masks: Sequence[int]) -> List[int]:
    return [m for m in masks if not any(o != m and o & m == m for o in masks)]


def maximal_by_range(masks: Sequence[int], range_of: Callable[[int], int]) -> List[int]:
    ranges = {m: range_of(m) for m in masks}
    return [
        m for m in masks
        if not any(r != ranges[m] and r & ranges[m] == ranges[m] for r in ranges.values())
    ]


def check_cap(af: AF, caps: Optional[Caps] = None) -> None:
    caps = caps or Caps()
    if len(af.arguments) > caps.af_arguments:
        raise CapExceededError("af_arguments", caps.af_arguments, len(af.arguments))


@lru_cache(maxsize=256)
def _compiled(af: AF) -> BitFramework:
    return BitFramework(af)


@lru_cache(maxsize=256)
def base_extension_masks(af: AF, sigma: Semantics) -> Tuple[int, ...]:
    bits = _compiled(af)
    cf = bits.conflict_free_sets()
    if sigma is Semantics.CONF:
        chosen = cf
    elif sigma is Semantics.STAGE:
        chosen = maximal_by_range(cf, bits.range)
    elif sigma is Semantics.STAB:
        chosen = [m for m in cf if bits.range(m) == bits.full]
    else:
        adm = [m for m in cf if m & ~bits.defended(m) == 0]
        if sigma is Semantics.ADM:
            chosen = adm
        elif sigma is Semantics.COMP:
            chosen = [m for m in adm if bits.defended(m) == m]
        elif sigma is Semantics.PREF:
            chosen = maximal_by_subset(adm)
        else:
            chosen = maximal_by_range(adm, bits.range)
    return tuple(chosen)


def range_of(af: AF, members: Iterable[str]) -> FrozenSet[str]:
    """S+ = S together with everything S attacks."""
    bits = _compiled(af)
    return bits.members(bits.range(bits.mask(members)))


def defended_set(af: AF, members: Iterable[str]) -> FrozenSet[str]:
    """def_F(S): arguments all of whose attackers are attacked by S."""
    bits = _compiled(af)
    return bits.members(bits.defended(bits.mask(members)))


def satisfies(af: AF, members: Iterable[str], sigma: Semantics, caps: Optional[Caps] = None) -> bool:
    """S is a sigma-extension of F."""
    bits = _compiled(af)
    mask = bits.mask(members)
    if sigma is Semantics.CONF:
        return bits.conflict_free(mask)
    if sigma is Semantics.ADM:
        return bits.admissible(mask)
    if sigma is Semantics.COMP:
        return bits.complete(mask)
    if sigma is Semantics.STAB:
        return bits.stable(mask)
    check_cap(af, caps)
    return mask in base_extension_masks(af, sigma)


def enumerate_af(af: AF, sigma: Semantics, caps: Optional[Caps] = None) -> List[Extension]:
    """All sigma-extensions of F, by cardinality then member names."""
    check_cap(af, caps)
    bits = _compiled(af)
    result = [Extension(bits.members(m), bits.members(bits.range(m))) for m in base_extension_masks(af, sigma)]
    result.sort(key=Extension.sort_key)
    logger.debug("%s: %d extensions over %d arguments", sigma.value, len(result), len(af.arguments))
    return result


def compiled(af: AF) -> BitFramework:
    return _compiled(af)
