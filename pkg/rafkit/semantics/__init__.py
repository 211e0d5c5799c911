"""
Extension semantics for AFs and RAFs.
"""

from .af import Extension, enumerate_af, satisfies
from .raf import (
    Maximality,
    RafReasoner,
    cons,
    cons_by_shortcut,
    cred,
    enumerate_extensions,
    is_extension,
    rejection_instance,
)

__all__ = [
    "Extension",
    "Maximality",
    "RafReasoner",
    "cons",
    "cons_by_shortcut",
    "cred",
    "enumerate_af",
    "enumerate_extensions",
    "is_extension",
    "rejection_instance",
    "satisfies",
]
