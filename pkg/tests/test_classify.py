import pytest
from hypothesis import given, settings, strategies as st

from rafkit.core.classify import classify_rc, clausify_raf, condition_units, is_clausal
from rafkit.core.formula import Literal
from rafkit.core.model import RcClass, RcMode, Semantics
from rafkit.core.parser import parse_raf
from rafkit.errors import ValidationError
from rafkit.generators import InstanceGenerator
from rafkit.semantics.raf import enumerate_extensions


def test_research_example_is_propositional(research_raf):
    assert classify_rc(research_raf) is RcClass.PROPOSITIONAL


def test_program_example_is_tight(program_raf):
    assert classify_rc(program_raf) is RcClass.TIGHT


def test_simple_when_only_arguments_occur():
    raf = parse_raf("arg(a). arg(b).\nrc(a): ~b | a.\n")
    assert classify_rc(raf) is RcClass.SIMPLE


def test_positive_loop_is_normal():
    raf = parse_raf("#mode asp.\narg(a).\nrc(a): x :- y.\nrc(a): y :- x.\n")
    assert classify_rc(raf) is RcClass.NORMAL


def test_loop_with_disjunction_is_disjunctive():
    raf = parse_raf("#mode asp.\narg(a).\nrc(a): x :- y.\nrc(a): y :- x.\nrc(a): x | y.\n")
    assert classify_rc(raf) is RcClass.DISJUNCTIVE


def test_disjunctive_heads_without_loop_are_tight():
    raf = parse_raf("#mode asp.\narg(a).\nrc(a): x | y :- a.\n")
    assert classify_rc(raf) is RcClass.TIGHT


def test_condition_units_are_clauses(research_raf):
    units = condition_units(research_raf, "W")
    assert set(units) == {
        frozenset([Literal("p_hw", False), Literal("p_dl", False)]),
        frozenset([Literal("p_dl", False), Literal("p_hw", True)]),
    }
    assert condition_units(research_raf, "noS") == ()


def test_condition_units_are_rules(program_raf):
    assert condition_units(program_raf, "d") == program_raf.condition("d").rules


NON_CLAUSAL = "arg(a). arg(b).\natt(a,b).\nrc(a): (x & y) | ~b.\nrc(b): ~(x | a) -> y.\n"


def test_is_clausal(research_raf, program_raf):
    assert is_clausal(research_raf)
    assert not is_clausal(parse_raf(NON_CLAUSAL))
    assert not is_clausal(program_raf)


def test_clausify_keeps_clausal_formulas():
    raf = parse_raf("arg(a).\nrc(a): x | y.\n")
    assert clausify_raf(raf) == raf


def test_clausify_leaves_programs_alone(program_raf):
    assert clausify_raf(program_raf) is program_raf


def test_clausify_adds_auxiliary_atoms():
    raf = parse_raf(NON_CLAUSAL)
    clausal = clausify_raf(raf)
    assert is_clausal(clausal)
    assert set(raf.rc_variables()) < set(clausal.rc_variables())
    assert clausal.mode is RcMode.CLASSICAL


@pytest.mark.parametrize("sigma", [Semantics.ADM, Semantics.STAB, Semantics.COMP])
def test_clausify_preserves_extensions(sigma):
    raf = parse_raf(NON_CLAUSAL)
    assert enumerate_extensions(clausify_raf(raf), sigma) == enumerate_extensions(raf, sigma)


@given(st.integers(min_value=0, max_value=5_000))
@settings(max_examples=25, deadline=None)
def test_clausify_preserves_random_extensions(seed):
    raf = InstanceGenerator(seed).raf(RcClass.PROPOSITIONAL, n_arguments=4, n_auxiliary=2)
    clausal = clausify_raf(raf)
    assert is_clausal(clausal)
    assert enumerate_extensions(clausal, Semantics.ADM) == enumerate_extensions(raf, Semantics.ADM)


@pytest.mark.parametrize("rc_class", list(RcClass))
def test_generator_hits_every_class(rc_class):
    for seed in range(5):
        assert classify_rc(InstanceGenerator(seed).raf(rc_class, n_arguments=4, n_auxiliary=3)) is rc_class


def test_generator_needs_auxiliary_atoms():
    with pytest.raises(ValidationError):
        InstanceGenerator(0).raf(RcClass.NORMAL, n_auxiliary=1)
