"""
Consistency checking for rejection conditions: classical formulas and ASP programs.
"""

from .asp import Program, answer_sets, asp_consistent, gl_reduct, is_answer_set, is_tight, justified_model_check
from .classical import classical_consistent, cnf_clauses, evaluate
from .tseitin import TseitinResult, tseitin

__all__ = [
    "Program",
    "TseitinResult",
    "answer_sets",
    "asp_consistent",
    "classical_consistent",
    "cnf_clauses",
    "evaluate",
    "gl_reduct",
    "is_answer_set",
    "is_tight",
    "justified_model_check",
    "tseitin",
]
