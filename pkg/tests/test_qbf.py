import subprocess

import pytest
from hypothesis import given, settings, strategies as st

from rafkit.config import Caps
from rafkit.core.formula import Literal
from rafkit.errors import CapExceededError, ExternalSolverError, ParseError, QbfFormatError
from rafkit.generators import InstanceGenerator
from rafkit.qbf import (
    QbfEvaluator,
    QbfInstance,
    Quantifier,
    evaluate_qbf,
    prenex_cnf,
    read_qdimacs,
    solve_external,
    write_qcir,
    write_qdimacs,
)
from rafkit.qbf.io import read_dimacs, variable_numbers, write_dimacs

SHAPES = ["e", "ea", "ae", "eae", "aea", "aeae"]


class TestModel:
    def test_worked_example(self, exists_forall_qbf):
        assert exists_forall_qbf.shape() == "ea"
        assert exists_forall_qbf.variables() == ("x1", "x2", "y")
        assert exists_forall_qbf.split("eae") == (("x1", "x2"), ("y",), ())
        assert exists_forall_qbf.split("ae") is None
        assert evaluate_qbf(exists_forall_qbf)

    def test_adjacent_blocks_merge(self):
        qbf = QbfInstance.make([("e", ["a"]), ("exists", ["b"]), ("a", [])], cnf=[[("a", True)]])
        assert qbf.shape() == "e"
        assert qbf.blocks[0].variables == ("a", "b")

    def test_free_matrix_variable(self):
        with pytest.raises(QbfFormatError, match="not quantified"):
            QbfInstance.make([("e", ["a"])], cnf=[[("a", True), ("b", False)]])

    def test_variable_quantified_twice(self):
        with pytest.raises(QbfFormatError, match="quantified twice"):
            QbfInstance.make([("e", ["a"]), ("a", ["a"])])

    def test_unknown_quantifier(self):
        with pytest.raises(QbfFormatError):
            Quantifier.parse("some")

    def test_negation_flips_truth(self, exists_forall_qbf):
        negated = exists_forall_qbf.negated()
        assert negated.shape() == "ae"
        assert negated.is_cnf
        assert not evaluate_qbf(negated)

    @given(st.integers(min_value=0, max_value=10_000), st.sampled_from(SHAPES))
    @settings(max_examples=100, deadline=None)
    def test_negation_is_the_complement(self, seed, shape):
        qbf = InstanceGenerator(seed).qbf(shape, block_size=2)
        assert evaluate_qbf(qbf.negated()) != evaluate_qbf(qbf)

    def test_empty_matrix_is_true(self):
        qbf = QbfInstance.make([("a", ["a"])])
        assert evaluate_qbf(qbf)
        assert not evaluate_qbf(qbf.negated())


class TestEvaluation:
    @given(st.integers(min_value=0, max_value=10_000), st.sampled_from(SHAPES))
    @settings(max_examples=60, deadline=None)
    def test_search_agrees_with_expansion(self, seed, shape):
        qbf = InstanceGenerator(seed).qbf(shape, block_size=2, n_groups=4, group_size=3)
        assert QbfEvaluator(qbf).evaluate() == evaluate_qbf(qbf)
        assert QbfEvaluator(qbf, sat_leaves=False).evaluate() == evaluate_qbf(qbf)

    @given(st.integers(min_value=0, max_value=10_000), st.sampled_from(["ea", "aea"]))
    @settings(max_examples=40, deadline=None)
    def test_prenexing_keeps_truth(self, seed, shape):
        qbf = InstanceGenerator(seed).qbf(shape, block_size=2)
        cnf = prenex_cnf(qbf)
        assert cnf.is_cnf
        assert cnf.shape().endswith("e")
        assert evaluate_qbf(cnf) == evaluate_qbf(qbf)

    def test_prenexing_cnf_is_identity(self):
        qbf = InstanceGenerator(0).cnf()
        assert prenex_cnf(qbf) is qbf

    def test_unit_universal_clause_is_false(self):
        qbf = QbfInstance.make([("e", ["x"]), ("a", ["y"])], cnf=[[("x", True), ("y", True)], [("x", False)]])
        assert not QbfEvaluator(qbf).evaluate()
        assert not evaluate_qbf(qbf)

    def test_expansion_cap(self, exists_forall_qbf):
        with pytest.raises(CapExceededError) as info:
            evaluate_qbf(exists_forall_qbf, Caps(qbf_variables=2))
        assert info.value.requested == 3

    def test_search_cap(self, exists_forall_qbf):
        with pytest.raises(CapExceededError):
            QbfEvaluator(exists_forall_qbf, Caps(qbf_expansion_variables=2)).evaluate()


class TestFiles:
    def test_numbers_follow_the_prefix(self, exists_forall_qbf):
        assert variable_numbers(exists_forall_qbf) == {"x1": 1, "x2": 2, "y": 3}

    def test_terms_need_permission(self, exists_forall_qbf):
        with pytest.raises(QbfFormatError):
            write_qdimacs(exists_forall_qbf)
        text = write_qdimacs(exists_forall_qbf, allow_terms=True)
        assert "t 1 -2 3 0" in text.splitlines()
        assert read_qdimacs(text) == exists_forall_qbf

    @given(st.integers(min_value=0, max_value=10_000), st.sampled_from(SHAPES))
    @settings(max_examples=100, deadline=None)
    def test_written_formulas_keep_their_truth(self, seed, shape):
        qbf = InstanceGenerator(seed).qbf(shape, block_size=2)
        back = read_qdimacs(write_qdimacs(prenex_cnf(qbf)))
        assert back.is_cnf
        assert evaluate_qbf(back) == evaluate_qbf(qbf)

    def test_anonymous_output(self):
        qbf = QbfInstance.make([("e", ["p"]), ("a", ["q"])], cnf=[[("p", True), ("q", False)]])
        assert write_qdimacs(qbf, names=False).splitlines() == ["p cnf 2 1", "e 1 0", "a 2 0", "1 -2 0"]

    def test_free_variables_become_outer_existentials(self):
        qbf = read_qdimacs("p cnf 2 1\na 2 0\n1 2 0\n")
        assert qbf.shape() == "ea"
        assert qbf.blocks[0].variables == ("x1",)
        assert qbf.cnf == (frozenset([Literal("x1"), Literal("x2")]),)

    def test_clause_count_mismatch(self):
        with pytest.raises(ParseError, match="announces 2 clauses"):
            read_qdimacs("p cnf 2 2\ne 1 2 0\n1 2 0\n")

    def test_quantifier_after_matrix(self):
        with pytest.raises(ParseError, match="after the matrix"):
            read_qdimacs("p cnf 2 1\n1 2 0\ne 1 2 0\n")

    def test_missing_terminator(self):
        with pytest.raises(ParseError, match="end with 0"):
            read_qdimacs("p cnf 2 1\n1 2\n")

    def test_dimacs(self):
        qbf = QbfInstance.make([("e", ["p", "q"])], cnf=[[("p", True), ("q", False)], [("q", True)]])
        assert read_dimacs(write_dimacs(qbf)) == qbf
        with pytest.raises(QbfFormatError):
            read_dimacs("p cnf 1 1\na 1 0\n1 0\n")

    def test_qcir(self, exists_forall_qbf):
        lines = write_qcir(exists_forall_qbf).splitlines()
        assert lines[:4] == ["#QCIR-G14", "exists(x1, x2)", "forall(y)", "output(g5)"]
        assert "g1 = and(x1, -x2, y)" in lines
        assert lines[-1] == "g5 = and(g3, g4)"


class TestExternalSolver:
    def completed(self, code):
        def run(cmd, **kwargs):
            with open(cmd[-1], encoding="utf-8") as handle:
                assert handle.read().startswith("p cnf")
            return subprocess.CompletedProcess(cmd, code, stdout="", stderr="oops")

        return run

    @pytest.mark.parametrize("code, expected", [(10, True), (20, False)])
    def test_exit_codes(self, monkeypatch, exists_forall_qbf, code, expected):
        monkeypatch.setattr(subprocess, "run", self.completed(code))
        assert solve_external(exists_forall_qbf, "depqbf") is expected

    def test_unknown_exit_code(self, monkeypatch, exists_forall_qbf):
        monkeypatch.setattr(subprocess, "run", self.completed(1))
        with pytest.raises(ExternalSolverError, match="code 1: oops"):
            solve_external(exists_forall_qbf, "depqbf")

    def test_solver_from_environment(self, monkeypatch, exists_forall_qbf):
        calls = []

        def run(cmd, **kwargs):
            calls.append(cmd)
            return subprocess.CompletedProcess(cmd, 10)

        monkeypatch.setattr(subprocess, "run", run)
        monkeypatch.setenv("RAF_QBF_SOLVER", "caqe --qdo")
        assert solve_external(exists_forall_qbf)
        assert calls[0][:2] == ["caqe", "--qdo"]

    def test_no_solver(self, exists_forall_qbf):
        with pytest.raises(ExternalSolverError, match="no external QBF solver"):
            solve_external(exists_forall_qbf)

    def test_missing_binary(self, monkeypatch, exists_forall_qbf):
        def run(cmd, **kwargs):
            raise FileNotFoundError(cmd[0])

        monkeypatch.setattr(subprocess, "run", run)
        with pytest.raises(ExternalSolverError, match="not found"):
            solve_external(exists_forall_qbf, "nosuchsolver")
