"""
Cross-checks against an external QDIMACS solver.

The solver is taken from the argument or from ``RAF_QBF_SOLVER``. It is called as
``<solver> <file>`` and must answer with the usual exit codes: 10 true, 20 false.
"""

import logging
import os
import shlex
import subprocess
import tempfile
from typing import Optional

from ..config import SOLVER_ENV
from ..errors import ExternalSolverError
from .io import write_qdimacs
from .model import QbfInstance
from .prenex import prenex_cnf

logger = logging.getLogger(__name__)

SOLVER_TRUE = 10
SOLVER_FALSE = 20


def solve_external(qbf: QbfInstance, solver: Optional[str] = None, timeout: float = 60.0) -> bool:
    """Truth value according to the external solver.

    Raises:
        ExternalSolverError: no solver configured, the binary is missing, it timed out, or it
            exited with a code other than 10/20.
    """
    command = solver or os.environ.get(SOLVER_ENV)
    if not command:
        raise ExternalSolverError(f"no external QBF solver configured (set {SOLVER_ENV})")

    text = write_qdimacs(prenex_cnf(qbf), names=False)
    with tempfile.NamedTemporaryFile("w", suffix=".qdimacs", delete=False) as handle:
        handle.write(text)
        path = handle.name
    try:
        cmd = shlex.split(command) + [path]
        logger.debug("Running %s", " ".join(cmd))
        result = subprocess.run(cmd, capture_output=True, text=True, timeout=timeout)
    except FileNotFoundError as e:
        raise ExternalSolverError(f"solver not found: {e}")
    except subprocess.TimeoutExpired:
        raise ExternalSolverError(f"solver timed out after {timeout}s")
    finally:
        os.unlink(path)

    if result.returncode == SOLVER_TRUE:
        return True
    if result.returncode == SOLVER_FALSE:
        return False
    raise ExternalSolverError(
        f"solver exited with code {result.returncode}: {result.stderr.strip()[:200]}"
    )
