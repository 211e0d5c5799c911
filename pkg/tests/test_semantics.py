import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rafkit.config import Caps
from rafkit.core.model import AF, RcClass, Semantics
from rafkit.errors import CapExceededError, ValidationError
from rafkit.generators import InstanceGenerator
from rafkit.semantics.af import defended_set, enumerate_af, range_of, satisfies
from rafkit.semantics.raf import (
    Maximality,
    RafReasoner,
    cons,
    cons_by_shortcut,
    cred,
    enumerate_extensions,
    is_extension,
    rejection_instance,
)
from rafkit.translators.simulations import af_to_raf

CORE = [Semantics.CONF, Semantics.ADM, Semantics.COMP, Semantics.STAB]


def members(extensions):
    return [set(e.members) for e in extensions]


def subsets(arguments):
    for size in range(len(arguments) + 1):
        yield from (frozenset(c) for c in itertools.combinations(arguments, size))


class TestDungSemantics:
    def test_conference_example(self, conference_af):
        assert members(enumerate_af(conference_af, Semantics.STAB)) == [{"T", "P", "W"}]
        assert members(enumerate_af(conference_af, Semantics.ADM)) == [
            set(), {"W"}, {"P", "W"}, {"T", "W"}, {"P", "T", "W"},
        ]

    def test_hybrid_has_no_stable_extension(self, hybrid_af):
        assert enumerate_af(hybrid_af, Semantics.STAB) == []
        assert members(enumerate_af(hybrid_af, Semantics.PREF)) == [{"a"}, {"b"}]

    def test_range_and_defense(self, conference_af):
        assert range_of(conference_af, {"W"}) == {"W", "noS"}
        assert defended_set(conference_af, {"W"}) == {"W", "T", "P"}

    def test_extension_payload(self, conference_af):
        (ext,) = enumerate_af(conference_af, Semantics.STAB)
        assert ext.to_dict() == {"extension": ["P", "T", "W"], "range": ["P", "T", "W", "noS"]}

    def test_unknown_argument(self, conference_af):
        with pytest.raises(ValidationError):
            satisfies(conference_af, {"X"}, Semantics.CONF)

    def test_cap(self):
        af = AF.make([f"a{i}" for i in range(6)])
        with pytest.raises(CapExceededError):
            enumerate_af(af, Semantics.CONF, Caps(af_arguments=5))

    def test_semantics_names(self):
        assert Semantics.parse("semiSt") is Semantics.SEMI_STABLE
        assert Semantics.parse("STAB") is Semantics.STAB
        with pytest.raises(ValidationError):
            Semantics.parse("grounded")

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_enumeration_matches_membership(self, seed):
        af = InstanceGenerator(seed).af(5, density=0.3)
        for sigma in CORE:
            listed = {e.members for e in enumerate_af(af, sigma)}
            assert listed == {s for s in subsets(af.arguments) if satisfies(af, s, sigma)}

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_semantics_inclusions(self, seed):
        af = InstanceGenerator(seed).af(5, density=0.35)
        family = {sigma: {e.members for e in enumerate_af(af, sigma)} for sigma in Semantics}
        assert family[Semantics.STAB] <= family[Semantics.SEMI_STABLE] <= family[Semantics.PREF]
        assert family[Semantics.PREF] <= family[Semantics.COMP] <= family[Semantics.ADM] <= family[Semantics.CONF]
        assert family[Semantics.STAB] <= family[Semantics.STAGE]
        assert family[Semantics.PREF]
        if family[Semantics.STAB]:
            assert family[Semantics.STAB] == family[Semantics.SEMI_STABLE] == family[Semantics.STAGE]


class TestRejection:
    def test_research_example_is_consistent_under_stable(self, research_raf):
        assert members(enumerate_extensions(research_raf, Semantics.STAB)) == [{"P", "Re", "T", "W"}]
        assert cons(research_raf, Semantics.STAB)
        assert cred(research_raf, Semantics.STAB, "W")
        assert not cred(research_raf, Semantics.STAB, "noS")

    def test_program_example(self, program_raf):
        assert members(enumerate_extensions(program_raf, Semantics.ADM)) == [{"d"}, {"a", "b"}]
        assert members(enumerate_extensions(program_raf, Semantics.STAB)) == [{"a", "b"}]
        assert members(enumerate_extensions(program_raf, Semantics.CONF)) == [{"d"}, {"a", "b"}, {"c", "d"}]
        assert not cred(program_raf, Semantics.ADM, "c")
        assert cred(program_raf, Semantics.ADM, "d")

    def test_non_monotone_conditions(self, program_raf):
        # {a} and {a,d} are admissible in the AF but their conditions are satisfiable
        assert not is_extension(program_raf, {"a"}, Semantics.ADM)
        assert not is_extension(program_raf, {"a", "d"}, Semantics.ADM)
        assert is_extension(program_raf, {"d"}, Semantics.ADM)

    def test_empty_set_is_never_an_extension(self, program_raf):
        assert not is_extension(program_raf, set(), Semantics.CONF)

    def test_maximality_readings(self, program_raf):
        assert members(enumerate_extensions(program_raf, Semantics.PREF)) == [{"a", "b"}]
        raf_level = enumerate_extensions(program_raf, Semantics.PREF, maximality=Maximality.RAF)
        assert members(raf_level) == [{"d"}, {"a", "b"}]
        for sigma in (Semantics.SEMI_STABLE, Semantics.STAGE):
            assert members(enumerate_extensions(program_raf, sigma)) == [{"a", "b"}]
            assert cons_by_shortcut(program_raf, sigma)

    def test_shortcut_only_for_range_semantics(self, program_raf):
        with pytest.raises(ValidationError):
            cons_by_shortcut(program_raf, Semantics.PREF)

    def test_rejection_instance_of_program(self, program_raf):
        instance = rejection_instance(program_raf, {"d"})
        facts = {next(iter(r.head)) for r in instance.program.rules if r.is_fact}
        assert facts == {"d"}
        assert len(instance.program.rules) == 1 + 1 + 3

    def test_rejection_instance_fixes_arguments(self, research_raf):
        instance = rejection_instance(research_raf, {"W"})
        assert instance.fixed == {a: a == "W" for a in research_raf.arguments}
        assert instance.formulas == research_raf.condition("W").formulas

    def test_unknown_query_argument(self, program_raf):
        with pytest.raises(ValidationError):
            cred(program_raf, Semantics.ADM, "z")

    def test_cap_on_arguments(self, program_raf):
        with pytest.raises(CapExceededError):
            RafReasoner(program_raf, Caps(af_arguments=3))

    def test_af_embedding(self, conference_af):
        raf = af_to_raf(conference_af)
        for sigma in Semantics:
            expected = [e for e in enumerate_af(conference_af, sigma) if e.members]
            assert enumerate_extensions(raf, sigma) == expected

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_backends_agree(self, seed):
        raf = InstanceGenerator(seed).raf(RcClass.PROPOSITIONAL, n_arguments=4, n_auxiliary=2)
        for sigma in CORE:
            with RafReasoner(raf, backend="brute") as brute, RafReasoner(raf, backend="sat") as sat:
                assert brute.enumerate(sigma) == sat.enumerate(sigma)

    @given(st.integers(min_value=0, max_value=10_000), st.sampled_from(list(RcClass)))
    @settings(max_examples=30, deadline=None)
    def test_extensions_are_rejecting_base_extensions(self, seed, rc_class):
        raf = InstanceGenerator(seed).raf(rc_class, n_arguments=4, n_auxiliary=2)
        with RafReasoner(raf) as reasoner:
            for sigma in CORE:
                found = reasoner.enumerate(sigma)
                base = {e.members for e in enumerate_af(raf.af, sigma)}
                assert all(e.members in base and e.members for e in found)
                assert all(reasoner.is_extension(e.members, sigma) for e in found)
                assert reasoner.cons(sigma) == bool(found)

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=20, deadline=None)
    def test_shortcut_matches_raf_maximality(self, seed):
        raf = InstanceGenerator(seed).raf(RcClass.SIMPLE, n_arguments=5)
        for sigma in (Semantics.SEMI_STABLE, Semantics.STAGE):
            assert cons_by_shortcut(raf, sigma) == bool(
                enumerate_extensions(raf, sigma, maximality=Maximality.RAF)
            )
