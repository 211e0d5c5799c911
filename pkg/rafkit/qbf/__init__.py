"""
Quantified Boolean formulas: model, evaluation, prenexing and file formats.
"""

from .evaluate import QbfEvaluator, evaluate_qbf
from .external import solve_external
from .io import read_dimacs, read_qdimacs, write_dimacs, write_qcir, write_qdimacs
from .model import Block, QbfInstance, Quantifier
from .prenex import prenex_cnf

__all__ = [
    "Block",
    "QbfEvaluator",
    "QbfInstance",
    "Quantifier",
    "evaluate_qbf",
    "prenex_cnf",
    "read_dimacs",
    "read_qdimacs",
    "solve_external",
    "write_dimacs",
    "write_qcir",
    "write_qdimacs",
]
