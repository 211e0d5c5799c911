"""
Error types for rafkit.

Library code raises these; only the command line turns them into exit codes.
"""

from enum import IntEnum
from typing import Optional, Sequence


class ExitCode(IntEnum):
    """Process exit codes of the ``raf`` command (SAT-solver convention for verdicts)."""

    OK = 0
    USAGE = 1
    INPUT = 2
    CAP = 3
    YES = 10
    NO = 20


class RafError(Exception):
    """Base class for all reported rafkit failures."""

    exit_code = ExitCode.INPUT


class ParseError(RafError):
    """Syntax error in an instance, TD or QBF document."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<input>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


class ValidationError(RafError):
    """A type invariant is violated; ``path`` names the offending element."""

    def __init__(self, message: str, path: Sequence[str] = ()):
        self.path = tuple(path)
        location = "/".join(self.path)
        super().__init__(f"{location}: {message}" if location else message)


class UnsupportedClassError(RafError):
    """Operation called on an instance outside its rejection-condition class or mode."""


class CapExceededError(RafError):
    """Brute-force cap exceeded. Never silently truncated."""

    exit_code = ExitCode.CAP

    def __init__(self, cap: str, limit: int, requested: int):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        super().__init__(f"cap '{cap}' exceeded: {requested} > {limit}")


class DecompositionError(RafError):
    """A tree decomposition condition is violated."""

    def __init__(self, condition: str, witness: Optional[object] = None):
        self.condition = condition
        self.witness = witness
        detail = f" (witness: {witness})" if witness is not None else ""
        super().__init__(f"{condition}{detail}")


class QbfFormatError(RafError):
    """Malformed, non-closed or wrongly shaped QBF."""


class ExternalSolverError(RafError):
    """External QBF solver missing, crashed, timed out or answered with an unknown code."""
