import pytest
from hypothesis import given, settings, strategies as st

from rafkit.core.formula import And, Atom, BOTTOM, Implies, Not, Or, TOP, render_formula, variables
from rafkit.core.model import AF, RAF, RcClass, RcMode, RejectionCondition, Rule, validate
from rafkit.core.parser import (
    parse_af,
    parse_caf,
    parse_formula,
    parse_raf,
    parse_twofold,
    render_af,
    render_caf,
    render_raf,
)
from rafkit.errors import ParseError, ValidationError
from rafkit.generators import InstanceGenerator


class TestFormulas:
    def test_precedence(self):
        phi = parse_formula("a | b & ~c -> d")
        assert phi == Implies(Or((Atom("a"), And((Atom("b"), Not(Atom("c")))))), Atom("d"))

    def test_implication_is_right_associative(self):
        assert parse_formula("a -> b -> c") == Implies(Atom("a"), Implies(Atom("b"), Atom("c")))

    def test_constants(self):
        assert parse_formula("true") == TOP
        assert parse_formula("~false") == Not(BOTTOM)

    def test_variables(self):
        assert variables(parse_formula("(x -> y) & ~z | true")) == {"x", "y", "z"}

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_render_parses_back(self, seed):
        gen = InstanceGenerator(seed)
        phi = gen.formula(["p", "q", "r", "s"], depth=3)
        assert parse_formula(render_formula(phi)) == phi


class TestDocuments:
    def test_af_document(self, conference_af):
        assert conference_af.arguments == ("noS", "T", "P", "W")
        assert ("W", "noS") in conference_af.attacks
        assert len(conference_af.attacks) == 3

    def test_classical_document(self, research_raf):
        assert research_raf.mode is RcMode.CLASSICAL
        assert research_raf.condition("noS").body == (TOP,)
        assert len(research_raf.condition("W").formulas) == 1
        assert research_raf.auxiliary_variables() == ("p_dl", "p_exp", "p_hw")

    def test_program_document(self, program_raf):
        assert program_raf.mode is RcMode.ASP
        assert program_raf.condition("b").rules == (Rule.make(pos=["a"]),)
        assert program_raf.condition("d").rules == (Rule.make(neg=["a", "b"]),)
        assert program_raf.condition("a").is_empty

    def test_disjunctive_rule(self):
        raf = parse_raf("#mode asp.\narg(a).\nrc(a): x | y :- a, not z.\n")
        assert raf.condition("a").rules == (Rule.make(["x", "y"], ["a"], ["z"]),)

    def test_rc_lines_accumulate(self):
        raf = parse_raf("arg(a).\nrc(a): x.\nrc(a): ~y.\n")
        assert raf.condition("a").formulas == (Atom("x"), Not(Atom("y")))

    def test_caf_document(self):
        caf = parse_caf("arg(a). arg(b).\natt(a,b).\nconstraint: a | b.\n")
        assert caf.constraint == Or((Atom("a"), Atom("b")))

    def test_twofold_document(self):
        af, shrinking = parse_twofold("arg(a). arg(b).\nshrink(b).\n")
        assert af.arguments == ("a", "b")
        assert shrinking == ("b",)

    def test_comments_and_layout(self):
        af = parse_af("% leading comment\narg(a).   arg(b). % trailing\n\natt(a,b).\n")
        assert af == AF.make(["a", "b"], [("a", "b")])


class TestErrors:
    def test_position_of_syntax_error(self):
        with pytest.raises(ParseError) as info:
            parse_raf("arg(a).\nrc(a): x &.\n", "broken.raf")
        assert info.value.line == 2
        assert str(info.value).startswith("broken.raf:2:")

    def test_undeclared_argument(self):
        with pytest.raises(ParseError, match="undeclared argument 'b'"):
            parse_af("arg(a).\natt(a,b).\n")

    def test_duplicate_argument(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_af("arg(a). arg(a).\n")

    def test_mode_after_rc_lines(self):
        with pytest.raises(ParseError, match="mixed classical/asp"):
            parse_raf("arg(a).\nrc(a): x.\n#mode asp.\n")

    def test_rule_in_classical_document(self):
        with pytest.raises(ParseError, match="mixed classical/asp"):
            parse_raf("arg(a).\nrc(a): x :- a.\n")

    def test_unknown_mode(self):
        with pytest.raises(ParseError, match="unknown mode"):
            parse_raf("#mode fuzzy.\narg(a).\n")

    def test_rc_lines_in_af_document(self):
        with pytest.raises(ValidationError):
            parse_af("arg(a).\nrc(a): x.\n")

    def test_empty_framework(self):
        with pytest.raises(ValidationError, match="no arguments"):
            parse_raf("#mode classical.\n")

    @pytest.mark.parametrize("name", ["true", "false"])
    def test_constants_cannot_name_arguments(self, name):
        with pytest.raises(ValidationError, match="reserved") as info:
            parse_raf(f"arg({name}). arg(b).\n")
        assert info.value.path == ("af", "arguments", name)

    def test_validate_reports_path(self):
        raf = RAF(AF.make(["a"]), {"b": RejectionCondition()}, RcMode.CLASSICAL)
        with pytest.raises(ValidationError) as info:
            validate(raf)
        assert info.value.path == ("rc", "b")


class TestRendering:
    def test_af_round_trip(self, hybrid_af):
        assert parse_af(render_af(hybrid_af)) == hybrid_af

    def test_shrink_lines(self, hybrid_af):
        text = render_af(hybrid_af, ("a", "b", "c"))
        assert parse_twofold(text) == (hybrid_af, ("a", "b", "c"))

    def test_raf_round_trip(self, research_raf, program_raf):
        assert parse_raf(render_raf(research_raf)) == research_raf
        assert parse_raf(render_raf(program_raf)) == program_raf

    def test_caf_round_trip(self):
        caf = parse_caf("arg(a). arg(b).\natt(b,a).\nconstraint: a -> ~b.\n")
        assert parse_caf(render_caf(caf)) == caf

    @pytest.mark.parametrize("rc_class", list(RcClass))
    def test_generated_rafs_round_trip(self, rc_class):
        raf = InstanceGenerator(3).raf(rc_class, n_arguments=4, n_auxiliary=2)
        assert parse_raf(render_raf(raf)) == raf
