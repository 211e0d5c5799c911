import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rafkit.config import Caps
from rafkit.core.formula import Atom, BOTTOM, Literal, Not, Or, TOP, variables
from rafkit.core.model import Rule
from rafkit.core.parser import parse_formula
from rafkit.errors import CapExceededError, UnsupportedClassError, ValidationError
from rafkit.generators import InstanceGenerator
from rafkit.logic.asp import (
    Program,
    answer_sets,
    asp_consistent,
    gl_reduct,
    is_answer_set,
    is_tight,
    justified_model_check,
    least_model,
    shift,
)
from rafkit.logic.classical import (
    classical_consistent,
    cnf_clauses,
    evaluate,
    is_cnf_shaped,
    nnf,
    simplify,
)
from rafkit.logic.tseitin import tseitin


def assignments(names):
    names = sorted(names)
    for values in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, values))


def clause_holds(clause, nu):
    return any(nu[l.atom] == l.positive for l in clause)


ATOMS = ["p", "q", "r", "s"]


class TestClassical:
    def test_evaluate(self):
        phi = parse_formula("(p -> q) & ~r")
        assert evaluate(phi, {"p": True, "q": True, "r": False})
        assert not evaluate(phi, {"p": True, "q": False, "r": False})

    def test_evaluate_needs_every_variable(self):
        with pytest.raises(ValidationError, match="unassigned"):
            evaluate(Atom("p"), {})

    def test_simplify(self):
        phi = parse_formula("(p & q) | r")
        assert simplify(phi, {"p": False}) == Atom("r")
        assert simplify(phi, {"r": True}) == TOP
        assert simplify(parse_formula("p -> q"), {"q": False}) == Not(Atom("p"))

    def test_constant_clauses(self):
        assert cnf_clauses(TOP) == ()
        assert cnf_clauses(BOTTOM) == (frozenset(),)
        assert cnf_clauses(Or((Atom("p"), Not(Atom("p"))))) == ()

    def test_cnf_shape(self):
        assert is_cnf_shaped(parse_formula("(p | ~q) & r"))
        assert is_cnf_shaped(parse_formula("p -> q"))
        assert not is_cnf_shaped(parse_formula("(p & q) | r"))

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_nnf_and_clauses_are_equivalent(self, seed):
        phi = InstanceGenerator(seed).formula(ATOMS, depth=3)
        clauses = cnf_clauses(phi)
        for nu in assignments(ATOMS):
            expected = evaluate(phi, nu)
            assert evaluate(nnf(phi), nu) == expected
            assert all(clause_holds(c, nu) for c in clauses) == expected

    @given(st.integers(min_value=0, max_value=10_000), st.booleans(), st.booleans())
    @settings(max_examples=40, deadline=None)
    def test_backends_agree(self, seed, p, q):
        gen = InstanceGenerator(seed)
        formulas = [gen.formula(ATOMS, depth=2) for _ in range(3)]
        fixed = {"p": p, "q": q}
        assert classical_consistent(formulas, fixed, backend="sat") == classical_consistent(
            formulas, fixed, backend="brute"
        )

    def test_empty_set_is_consistent(self):
        assert classical_consistent([], {})

    def test_fixed_values_count(self):
        assert not classical_consistent([Atom("p")], {"p": False})
        assert classical_consistent([Or((Atom("p"), Atom("q")))], {"p": False})

    def test_brute_force_cap(self):
        wide = [Or(tuple(Atom(f"v{i}") for i in range(6)))]
        with pytest.raises(CapExceededError) as info:
            classical_consistent(wide, {}, Caps(free_variables=5))
        assert info.value.cap == "free_variables"

    def test_unknown_backend(self):
        with pytest.raises(ValidationError):
            classical_consistent([], {}, backend="oracle")


class TestTseitin:
    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_auxiliaries_follow_their_subformulas(self, seed):
        phi = InstanceGenerator(seed).formula(ATOMS, depth=3)
        encoded = tseitin(phi)
        assert not set(encoded.aux) & variables(phi)
        for nu in assignments(variables(phi)):
            full = {**nu, **{name: evaluate(node, nu) for name, node in encoded.aux.items()}}
            assert all(clause_holds(c, full) for c in encoded.clauses)
            out = encoded.output
            assert (full[out.atom] == out.positive) == evaluate(phi, nu)
            # the definitions are biconditional: no auxiliary can flip
            for name in encoded.aux:
                flipped = {**full, name: not full[name]}
                assert not all(clause_holds(c, flipped) for c in encoded.clauses)

    def test_literals_need_no_auxiliary(self):
        encoded = tseitin(Not(Atom("p")))
        assert encoded.clauses == ()
        assert encoded.output == Literal("p", False)

    def test_fresh_names_avoid_taken(self):
        encoded = tseitin(parse_formula("p & q"), taken={"__ts1"})
        assert "__ts1" not in encoded.aux


def rules(*text):
    """Rules from 'h1|h2 :- a, not b' shorthand."""
    parsed = []
    for item in text:
        head, _, body = item.partition(":-")
        pos, neg = [], []
        for lit in filter(None, (b.strip() for b in body.split(","))):
            (neg if lit.startswith("not ") else pos).append(lit[4:] if lit.startswith("not ") else lit)
        parsed.append(Rule.make(filter(None, (h.strip() for h in head.split("|"))), pos, neg))
    return Program.of(parsed)


class TestAnswerSets:
    def test_choice(self):
        program = rules("a :- not b", "b :- not a")
        assert list(answer_sets(program)) == [frozenset("a"), frozenset("b")]

    def test_odd_loop_has_no_answer_set(self):
        assert not asp_consistent(rules("a :- not a"))

    def test_constraint(self):
        assert list(answer_sets(rules("a :- not b", "b :- not a", ":- a"))) == [frozenset("b")]

    def test_disjunction_is_minimal(self):
        program = rules("a | b")
        assert list(answer_sets(program)) == [frozenset("a"), frozenset("b")]
        assert not is_answer_set(program, {"a", "b"})

    def test_saturation(self):
        # a | b, saturated by s, with s required: answer set iff every guess reaches s
        program = rules("a | b", "a :- s", "b :- s", "s :- a", "s :- b", ":- not s")
        assert list(answer_sets(program)) == [frozenset("abs")]

    def test_reduct_and_least_model(self):
        program = rules("a :- not b", "c :- a")
        reduct = gl_reduct(program, {"a", "c"})
        assert least_model(reduct) == {"a", "c"}
        assert gl_reduct(program, {"b"}).rules == (Rule.make(["c"], ["a"]),)

    def test_tightness(self):
        assert is_tight(rules("a :- b", "b :- not a"))
        assert not is_tight(rules("a :- b", "b :- a"))
        assert not is_tight(rules("a :- a"))

    def test_justified_models(self):
        program = rules("a | b :- c", "c")
        assert justified_model_check(program, {"a", "c"})
        assert not justified_model_check(program, {"a", "b", "c"})
        with pytest.raises(UnsupportedClassError):
            justified_model_check(rules("a :- b", "b :- a"), set())

    def test_shift(self):
        shifted = shift(rules("a | b :- c", "c"))
        assert set(shifted.rules) == set(rules("a :- c, not b", "b :- c, not a", "c").rules)

    @given(st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=25, deadline=None)
    def test_shift_keeps_answer_sets_of_tight_programs(self, seed):
        gen = InstanceGenerator(seed)
        raf = gen.raf("tight", n_arguments=2, n_auxiliary=3)
        program = Program.of(raf.conditions(raf.arguments))
        assert list(answer_sets(shift(program))) == list(answer_sets(program))

    def test_answer_set_cap(self):
        program = rules(*(f"x{i} :- not y{i}" for i in range(5)), *(f"y{i} :- not x{i}" for i in range(5)))
        with pytest.raises(CapExceededError):
            list(answer_sets(program, Caps(answer_set_atoms=8)))
