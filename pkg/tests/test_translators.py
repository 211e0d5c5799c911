import pytest
from hypothesis import given, settings, strategies as st

from rafkit.core.model import AF, CAF, RcClass, Semantics
from rafkit.core.parser import parse_formula
from rafkit.decomposition.graph import primal_graph
from rafkit.decomposition.td import heuristic_td, validate_td
from rafkit.errors import QbfFormatError, UnsupportedClassError, ValidationError
from rafkit.generators import InstanceGenerator
from rafkit.qbf.evaluate import evaluate_qbf
from rafkit.qbf.model import QbfInstance
from rafkit.semantics.raf import enumerate_extensions
from rafkit.translators import (
    TwofoldQuery,
    af_to_raf,
    caf_oracle,
    caf_query_semantics,
    caf_to_raf,
    cred_hardness_instance,
    hardness_instance,
    hardness_td,
    twofold_oracle,
    twofold_to_raf,
)
from rafkit.translators.simulations import CAF_SEMANTICS


def non_empty(sets):
    return {s for s in sets if s}


def extension_sets(raf, sigma):
    return {e.members for e in enumerate_extensions(raf, sigma)}


class TestCafSimulation:
    def test_query_semantics(self):
        assert caf_query_semantics(Semantics.PREF) is Semantics.ADM
        assert caf_query_semantics(Semantics.SEMI_STABLE) is Semantics.ADM
        assert caf_query_semantics(Semantics.STAGE) is Semantics.CONF
        assert caf_query_semantics(Semantics.STAB) is Semantics.STAB

    def test_constraint_rejects_violating_sets(self):
        af = AF.make(["a", "b", "c"], [("a", "b"), ("b", "a")])
        caf = CAF(af, parse_formula("a -> c"))
        assert caf_oracle(caf, Semantics.ADM) == [
            frozenset(), frozenset("b"), frozenset("c"), frozenset("ac"), frozenset("bc"),
        ]
        assert extension_sets(caf_to_raf(caf, Semantics.ADM), Semantics.ADM) == non_empty(
            caf_oracle(caf, Semantics.ADM)
        )

    def test_preferred_only_counts_constrained_supersets(self):
        af = AF.make(["a", "b"], [])
        caf = CAF(af, parse_formula("~(a & b)"))
        assert caf_oracle(caf, Semantics.PREF) == [frozenset("a"), frozenset("b")]
        raf = caf_to_raf(caf, Semantics.PREF)
        assert extension_sets(raf, caf_query_semantics(Semantics.PREF)) == {frozenset("a"), frozenset("b")}

    @pytest.mark.parametrize("sigma", CAF_SEMANTICS)
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=15, deadline=None)
    def test_simulation_matches_oracle(self, sigma, seed):
        gen = InstanceGenerator(seed)
        caf = gen.caf(n_arguments=3, density=0.35, depth=2)
        raf = caf_to_raf(caf, sigma)
        assert extension_sets(raf, caf_query_semantics(sigma)) == non_empty(caf_oracle(caf, sigma))

    def test_unsupported_semantics(self, conference_af):
        with pytest.raises(UnsupportedClassError):
            caf_to_raf(CAF(conference_af, parse_formula("W")), Semantics.CONF)

    def test_constraint_over_unknown_name(self, conference_af):
        with pytest.raises(ValidationError):
            caf_to_raf(CAF(conference_af, parse_formula("X")), Semantics.ADM)


class TestTwofoldSimulation:
    def test_hybrid_example(self, hybrid_af):
        query = TwofoldQuery(hybrid_af, ("a", "b", "c"), Semantics.ADM)
        assert twofold_oracle(query) == [frozenset("a"), frozenset("b")]
        assert extension_sets(twofold_to_raf(hybrid_af, ("a", "b", "c")), Semantics.ADM) == {
            frozenset("a"), frozenset("b"),
        }

    def test_empty_shrinking_is_the_af(self, conference_af):
        assert twofold_to_raf(conference_af, ()) == af_to_raf(conference_af)

    def test_unknown_shrinking_argument(self, conference_af):
        with pytest.raises(ValidationError):
            twofold_to_raf(conference_af, ["X"])

    @pytest.mark.parametrize("sigma", [Semantics.CONF, Semantics.ADM, Semantics.COMP, Semantics.STAB])
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=15, deadline=None)
    def test_simulation_matches_oracle(self, sigma, seed):
        gen = InstanceGenerator(seed)
        af = gen.af(4, density=0.35)
        shrinking = gen.shrinking(af)
        expected = non_empty(twofold_oracle(TwofoldQuery(af, shrinking, sigma)))
        assert extension_sets(twofold_to_raf(af, shrinking), sigma) == expected


class TestConsistencyGenerators:
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=20, deadline=None)
    def test_sat_to_simple(self, seed):
        source = InstanceGenerator(seed).cnf(n_variables=3, n_clauses=4)
        instance = hardness_instance(source, RcClass.SIMPLE)
        assert instance.semantics is Semantics.STAB
        assert instance.decide() == evaluate_qbf(source)

    @pytest.mark.parametrize("rc_class", [RcClass.PROPOSITIONAL, RcClass.TIGHT])
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=15, deadline=None)
    def test_exists_forall_dnf(self, rc_class, seed):
        source = InstanceGenerator(seed).qbf("ea", block_size=2, n_groups=3, group_size=3)
        instance = hardness_instance(source, rc_class)
        assert instance.semantics is Semantics.CONF
        assert instance.decide() == evaluate_qbf(source)

    @pytest.mark.slow
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=10, deadline=None)
    def test_exists_forall_exists_cnf(self, seed):
        source = InstanceGenerator(seed).qbf("eae", block_size=2, n_groups=4, group_size=3)
        assert hardness_instance(source, RcClass.DISJUNCTIVE).decide() == evaluate_qbf(source)

    def test_simple_instance_shape(self):
        source = QbfInstance.make([("e", ["x", "y"])], cnf=[[("x", True), ("y", False)]])
        instance = hardness_instance(source, RcClass.SIMPLE)
        assert instance.raf.arguments == ("x", "x__p", "y", "y__p", "v1")
        assert ("v1", "v1") in instance.raf.attacks
        assert instance.clause_arguments == (("v1", ("x", "y__p")),)
        assert instance.decide()

    def test_unsatisfiable_cnf(self):
        source = QbfInstance.make([("e", ["x"])], cnf=[[("x", True)], [("x", False)]])
        assert not hardness_instance(source, RcClass.SIMPLE).decide()

    def test_wrong_prefix(self):
        source = InstanceGenerator(1).qbf("ae", block_size=1)
        with pytest.raises(QbfFormatError):
            hardness_instance(source, RcClass.SIMPLE)

    def test_long_terms_need_tight_conditions(self):
        terms = [[("x1", True), ("y1", True), ("y2", False), ("y3", True)]]
        source = QbfInstance.make([("e", ["x1"]), ("a", ["y1", "y2", "y3"])], dnf=terms)
        with pytest.raises(QbfFormatError):
            hardness_instance(source, RcClass.PROPOSITIONAL)
        assert hardness_instance(source, RcClass.TIGHT).decide() == evaluate_qbf(source)

    def test_terms_must_mention_outer_variables(self):
        source = QbfInstance.make([("e", ["x"]), ("a", ["y"])], dnf=[[("y", True)], [("x", True)]])
        with pytest.raises(QbfFormatError):
            hardness_instance(source, RcClass.PROPOSITIONAL)

    def test_normal_has_no_generator(self):
        with pytest.raises(UnsupportedClassError):
            hardness_instance(InstanceGenerator(0).cnf(), RcClass.NORMAL)


class TestCredulousGenerators:
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=10, deadline=None)
    def test_forall_exists_to_simple(self, seed):
        source = InstanceGenerator(seed).qbf("ae", block_size=1, n_groups=3, group_size=2)
        instance = cred_hardness_instance(source, RcClass.SIMPLE)
        assert instance.query is not None
        assert instance.decide() == evaluate_qbf(source)

    @pytest.mark.slow
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=8, deadline=None)
    def test_forall_exists_forall_to_propositional(self, seed):
        source = InstanceGenerator(seed).qbf("aea", block_size=1, n_groups=3, group_size=2)
        assert cred_hardness_instance(source, RcClass.PROPOSITIONAL).decide() == evaluate_qbf(source)

    @pytest.mark.slow
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=8, deadline=None)
    def test_four_blocks_to_disjunctive(self, seed):
        source = InstanceGenerator(seed).qbf("aeae", block_size=1, n_groups=3, group_size=2)
        assert cred_hardness_instance(source, RcClass.DISJUNCTIVE).decide() == evaluate_qbf(source)

    def test_tight_has_no_credulous_generator(self):
        with pytest.raises(UnsupportedClassError):
            cred_hardness_instance(InstanceGenerator(0).qbf("ae"), RcClass.TIGHT)


class TestHardnessDecompositions:
    @pytest.mark.parametrize(
        "rc_class, shape",
        [(RcClass.SIMPLE, "e"), (RcClass.PROPOSITIONAL, "ea"), (RcClass.TIGHT, "ea")],
    )
    @given(seed=st.integers(min_value=0, max_value=5_000))
    @settings(max_examples=15, deadline=None)
    def test_width_at_most_doubled(self, rc_class, shape, seed):
        gen = InstanceGenerator(seed)
        source = gen.cnf(n_variables=4, n_clauses=4) if shape == "e" else gen.qbf(shape, block_size=2)
        instance = hardness_instance(source, rc_class)
        source_td = heuristic_td(primal_graph(source))
        td = hardness_td(instance, source_td)
        assert validate_td(primal_graph(instance.raf), td) == td.width
        assert td.width <= 2 * source_td.width + 1

    def test_disjunctive_not_supported(self):
        source = InstanceGenerator(0).qbf("eae", block_size=1)
        instance = hardness_instance(source, RcClass.DISJUNCTIVE)
        with pytest.raises(UnsupportedClassError):
            hardness_td(instance, heuristic_td(primal_graph(source)))
