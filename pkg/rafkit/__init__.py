"""
rafkit: argumentation frameworks with rejection conditions.

Key Features:
- Extension semantics (conf, adm, comp, pref, stab, semiSt, stag) for AFs and RAFs
- Classical and answer-set rejection conditions, classified by class
- Simulations of AFs, constrained AFs and twofold extensions
- Hardness generators from quantified Boolean formulas
- Tree decompositions and decomposition-guided QBF encodings of stable semantics
"""

from .config import Caps, RunConfig, load_config
from .core.model import AF, CAF, RAF, RcClass, RcMode, Rule, Semantics
from .core.parser import parse_af, parse_caf, parse_raf, render_raf
from .errors import (
    CapExceededError,
    DecompositionError,
    ExitCode,
    ExternalSolverError,
    ParseError,
    QbfFormatError,
    RafError,
    UnsupportedClassError,
    ValidationError,
)
from .semantics.raf import Maximality, cons, cred, enumerate_extensions, is_extension

__version__ = "0.1.0"

__all__ = [
    "AF",
    "CAF",
    "CapExceededError",
    "Caps",
    "DecompositionError",
    "ExitCode",
    "ExternalSolverError",
    "Maximality",
    "ParseError",
    "QbfFormatError",
    "RAF",
    "RafError",
    "RcClass",
    "RcMode",
    "Rule",
    "RunConfig",
    "Semantics",
    "UnsupportedClassError",
    "ValidationError",
    "cons",
    "cred",
    "enumerate_extensions",
    "is_extension",
    "load_config",
    "parse_af",
    "parse_caf",
    "parse_raf",
    "render_raf",
]
