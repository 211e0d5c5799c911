"""
Extensions of rejection augmented frameworks.

E is a sigma-extension of G when it is a non-empty sigma-extension of the base AF and
C(E) together with E and the constraints for the rejected-by-omission arguments is
inconsistent.

Key Features:
- Rejection instances in both modes (formula set with fixed arguments, or program)
- Cached rejection verdicts shared by every semantics of one reasoner
- Two readings of maximality for pref/semiSt/stag (base AF, or among RAF extensions)
- Existence shortcut for semiSt/stag, exact under RAF-level maximality
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pysat.formula import IDPool
from pysat.solvers import Solver

from ..config import Caps
from ..core.formula import Formula
from ..core.model import RAF, RcMode, Rule, Semantics
from ..errors import ValidationError
from ..logic.asp import Program, asp_consistent
from ..logic.classical import SAT_SOLVER, brute_force_consistent
from ..logic.tseitin import tseitin
from .af import (
    Extension,
    base_extension_masks,
    check_cap,
    compiled,
    maximal_by_range,
    maximal_by_subset,
)

logger = logging.getLogger(__name__)

BRUTE_FORCE_AUX_LIMIT = 10


class Maximality(Enum):
    """Where pref/semiSt/stag maximality is judged."""

    BASE = "base"
    RAF = "raf"


@dataclass(frozen=True)
class RejectionInstance:
    """The object whose inconsistency rejects every argument outside E."""

    mode: RcMode
    program: Optional[Program] = None
    formulas: Tuple[Formula, ...] = ()
    fixed: Dict[str, bool] = field(default_factory=dict)


def rejection_instance(raf: RAF, members: Iterable[str]) -> RejectionInstance:
    """C(E) with E fixed true and A minus E fixed false (or as facts and constraints)."""
    chosen = frozenset(members)
    unknown = chosen - set(raf.arguments)
    if unknown:
        raise ValidationError(f"'{sorted(unknown)[0]}' is not an argument", ("extension",))
    lifted = raf.conditions(chosen)
    if raf.mode is RcMode.ASP:
        rules = list(lifted)
        rules += [Rule.make(head=[e]) for e in raf.arguments if e in chosen]
        rules += [Rule.make(pos=[a]) for a in raf.arguments if a not in chosen]
        return RejectionInstance(RcMode.ASP, program=Program.of(rules))
    fixed = {a: a in chosen for a in raf.arguments}
    return RejectionInstance(RcMode.CLASSICAL, formulas=tuple(lifted), fixed=fixed)


class _IncrementalClassical:
    """One solver for all candidates: selector s_a guards the clauses of C(a)."""

    def __init__(self, raf: RAF):
        self.raf = raf
        self.pool = IDPool()
        taken = set(raf.arguments) | set(raf.rc_variables())
        clauses = []
        for a in raf.arguments:
            selector = self.pool.id(("sel", a))
            for i, phi in enumerate(raf.condition(a).body):
                encoded = tseitin(phi, taken, prefix=f"__rc_{a}_{i}_")
                taken |= set(encoded.aux)
                for clause in encoded.clauses:
                    clauses.append([self._lit(l) for l in clause])
                clauses.append([-selector, self._lit(encoded.output)])
        self.arguments_in_rc = [a for a in raf.arguments if a in raf.rc_variables()]
        self.solver = Solver(name=SAT_SOLVER, bootstrap_with=clauses)

    def _lit(self, literal) -> int:
        v = self.pool.id(("var", literal.atom))
        return v if literal.positive else -v

    def consistent(self, chosen: FrozenSet[str]) -> bool:
        assumptions = [self.pool.id(("sel", a)) for a in self.raf.arguments if a in chosen]
        for a in self.arguments_in_rc:
            v = self.pool.id(("var", a))
            assumptions.append(v if a in chosen else -v)
        return self.solver.solve(assumptions=assumptions)

    def close(self) -> None:
        self.solver.delete()


class RafReasoner:
    """Decides cons, cred and enum for one RAF, caching rejection verdicts per candidate."""

    def __init__(
        self,
        raf: RAF,
        caps: Optional[Caps] = None,
        maximality: Maximality = Maximality.BASE,
        backend: str = "auto",
    ):
        self.raf = raf
        self.caps = caps or Caps()
        self.maximality = maximality
        self.logger = logging.getLogger(f"{__name__}.RafReasoner")
        check_cap(raf.af, self.caps)
        self.bits = compiled(raf.af)
        if backend == "auto":
            backend = "brute" if len(raf.auxiliary_variables()) <= BRUTE_FORCE_AUX_LIMIT else "sat"
        if backend not in ("brute", "sat"):
            raise ValidationError(f"unknown consistency backend '{backend}'", ("backend",))
        self.backend = backend
        self._verdicts: Dict[int, bool] = {}
        self._incremental: Optional[_IncrementalClassical] = None
        self._families: Dict[Semantics, Tuple[int, ...]] = {}

    # rejection

    def _consistent(self, chosen: FrozenSet[str]) -> bool:
        instance = rejection_instance(self.raf, chosen)
        if instance.mode is RcMode.ASP:
            return asp_consistent(instance.program, self.caps)
        if self.backend == "brute":
            return brute_force_consistent(instance.formulas, instance.fixed, self.caps)
        if self._incremental is None:
            self._incremental = _IncrementalClassical(self.raf)
        return self._incremental.consistent(chosen)

    def rejects(self, mask: int) -> bool:
        """The rejection instance of the set is inconsistent."""
        if mask not in self._verdicts:
            self._verdicts[mask] = not self._consistent(self.bits.members(mask))
        return self._verdicts[mask]

    def is_rejecting(self, members: Iterable[str]) -> bool:
        return self.rejects(self.bits.mask(members))

    # families

    def _valid(self, masks: Iterable[int]) -> List[int]:
        return [m for m in masks if m and self.rejects(m)]

    def extension_masks(self, sigma: Semantics) -> Tuple[int, ...]:
        if sigma in self._families:
            return self._families[sigma]
        lifted_maximality = self.maximality is Maximality.RAF and sigma in (
            Semantics.PREF,
            Semantics.SEMI_STABLE,
            Semantics.STAGE,
        )
        if not lifted_maximality:
            masks = tuple(self._valid(base_extension_masks(self.raf.af, sigma)))
        else:
            base = Semantics.CONF if sigma is Semantics.STAGE else Semantics.ADM
            pool = self._valid(base_extension_masks(self.raf.af, base))
            if sigma is Semantics.PREF:
                masks = tuple(maximal_by_subset(pool))
            else:
                masks = tuple(maximal_by_range(pool, self.bits.range))
        self._families[sigma] = masks
        self.logger.debug("%s (%s maximality): %d extensions", sigma.value, self.maximality.value, len(masks))
        return masks

    def is_extension(self, members: Iterable[str], sigma: Semantics) -> bool:
        mask = self.bits.mask(members)
        if mask == 0:
            return False
        if sigma in (Semantics.CONF, Semantics.ADM, Semantics.COMP, Semantics.STAB):
            satisfied = {
                Semantics.CONF: self.bits.conflict_free,
                Semantics.ADM: self.bits.admissible,
                Semantics.COMP: self.bits.complete,
                Semantics.STAB: self.bits.stable,
            }[sigma](mask)
            return satisfied and self.rejects(mask)
        return mask in self.extension_masks(sigma)

    def enumerate(self, sigma: Semantics) -> List[Extension]:
        result = [
            Extension(self.bits.members(m), self.bits.members(self.bits.range(m)))
            for m in self.extension_masks(sigma)
        ]
        result.sort(key=Extension.sort_key)
        return result

    def cons_by_shortcut(self, sigma: Semantics) -> bool:
        """Some admissible (semiSt) or conflict-free (stag) non-empty set is rejecting."""
        if sigma not in (Semantics.SEMI_STABLE, Semantics.STAGE):
            raise ValidationError("the existence shortcut applies to semiSt and stag only", ("semantics",))
        base = Semantics.ADM if sigma is Semantics.SEMI_STABLE else Semantics.CONF
        return any(m and self.rejects(m) for m in base_extension_masks(self.raf.af, base))

    def cons(self, sigma: Semantics) -> bool:
        if self.maximality is Maximality.RAF and sigma in (Semantics.SEMI_STABLE, Semantics.STAGE):
            return self.cons_by_shortcut(sigma)
        return bool(self.extension_masks(sigma))

    def cred(self, sigma: Semantics, argument: str) -> bool:
        if argument not in self.bits.index:
            raise ValidationError(f"unknown argument '{argument}'", ("argument", argument))
        bit = 1 << self.bits.index[argument]
        return any(m & bit for m in self.extension_masks(sigma))

    def close(self) -> None:
        if self._incremental is not None:
            self._incremental.close()
            self._incremental = None

    def __enter__(self) -> "RafReasoner":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _with_reasoner(raf: RAF, caps: Optional[Caps], maximality: Maximality, method: str, *args):
    with RafReasoner(raf, caps, maximality) as reasoner:
        return getattr(reasoner, method)(*args)


def is_extension(
    raf: RAF, members: Iterable[str], sigma: Semantics,
    caps: Optional[Caps] = None, maximality: Maximality = Maximality.BASE,
) -> bool:
    return _with_reasoner(raf, caps, maximality, "is_extension", members, sigma)


def enumerate_extensions(
    raf: RAF, sigma: Semantics, caps: Optional[Caps] = None, maximality: Maximality = Maximality.BASE
) -> List[Extension]:
    """ext_sigma(G), by cardinality then member names."""
    return _with_reasoner(raf, caps, maximality, "enumerate", sigma)


def cons(raf: RAF, sigma: Semantics, caps: Optional[Caps] = None, maximality: Maximality = Maximality.BASE) -> bool:
    return _with_reasoner(raf, caps, maximality, "cons", sigma)


def cons_by_shortcut(raf: RAF, sigma: Semantics, caps: Optional[Caps] = None) -> bool:
    return _with_reasoner(raf, caps, Maximality.RAF, "cons_by_shortcut", sigma)


def cred(
    raf: RAF, sigma: Semantics, argument: str,
    caps: Optional[Caps] = None, maximality: Maximality = Maximality.BASE,
) -> bool:
    return _with_reasoner(raf, caps, maximality, "cred", sigma, argument)
