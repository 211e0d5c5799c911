"""
Instances: formulas, frameworks, the text format and rejection-condition classes.
"""

from .classify import ConditionUnit, classify_rc, clausify_raf, condition_units, is_clausal
from .formula import Atom, Formula, Literal, Not
from .model import AF, CAF, RAF, RcClass, RcMode, RejectionCondition, Rule, Semantics, validate
from .parser import parse_af, parse_caf, parse_raf, parse_twofold, render_af, render_caf, render_raf

__all__ = [
    "AF",
    "Atom",
    "CAF",
    "ConditionUnit",
    "Formula",
    "Literal",
    "Not",
    "RAF",
    "RcClass",
    "RcMode",
    "RejectionCondition",
    "Rule",
    "Semantics",
    "classify_rc",
    "clausify_raf",
    "condition_units",
    "is_clausal",
    "parse_af",
    "parse_caf",
    "parse_raf",
    "parse_twofold",
    "render_af",
    "render_caf",
    "render_raf",
    "validate",
]
