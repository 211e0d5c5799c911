"""
Run configuration for rafkit.

Precedence (lowest first): built-in defaults, ``raf.yaml`` (or an explicit file),
environment variables (``.env`` is read through python-dotenv), command-line flags.

Recognized environment variables:
- RAF_CAP_AF_ARGUMENTS, RAF_CAP_FREE_VARIABLES, RAF_CAP_ANSWER_SET_ATOMS,
  RAF_CAP_QBF_VARIABLES, RAF_CAP_QBF_EXPANSION_VARIABLES
- RAF_QBF_SOLVER: executable used for external QBF cross-checks
"""

import logging
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import find_dotenv, load_dotenv

from .errors import ValidationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = "raf.yaml"
SOLVER_ENV = "RAF_QBF_SOLVER"
CAP_ENV_PREFIX = "RAF_CAP_"


@dataclass(frozen=True)
class Caps:
    """Brute-force limits. Exceeding one is an error, never a truncation."""

    af_arguments: int = 20
    free_variables: int = 22
    answer_set_atoms: int = 22
    qbf_variables: int = 24
    qbf_expansion_variables: int = 400

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ValidationError(f"cap must be a positive integer, got {value!r}", ("caps", f.name))

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "Caps":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(f"unknown cap '{unknown[0]}'", ("caps", unknown[0]))
        return cls(**{k: int(v) for k, v in data.items()})


@dataclass
class RunConfig:
    """Everything a CLI run needs besides the input document itself."""

    task: str = "cons"
    semantics: str = "stab"
    fragment: str = "stab"
    heuristic: str = "min-fill"
    output_format: str = "text"
    maximality: str = "base"
    caps: Caps = field(default_factory=Caps)
    seed: int = 0
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    qbf_solver: Optional[str] = None

    def __post_init__(self):
        if self.seed < 0:
            raise ValidationError("seed must be non-negative", ("seed",))


def _read_yaml(path: Path) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValidationError("configuration file must hold a mapping", (str(path),))
    return data


def _caps_from_env(base: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for f in fields(Caps):
        raw = os.environ.get(CAP_ENV_PREFIX + f.name.upper())
        if raw is None:
            continue
        try:
            merged[f.name] = int(raw)
        except ValueError:
            raise ValidationError(f"not an integer: {raw!r}", ("env", CAP_ENV_PREFIX + f.name.upper()))
    return merged


def load_config(path: Optional[Path] = None, **overrides: Any) -> RunConfig:
    """Build a RunConfig from defaults, a YAML file, the environment and explicit overrides.

    Args:
        path: YAML file to read; ``raf.yaml`` in the working directory is used if it exists.
        **overrides: RunConfig fields set by the caller (None values are ignored).

    Returns:
        The merged configuration.
    """
    load_dotenv(find_dotenv(usecwd=True))

    data: Dict[str, Any] = {}
    if path is not None:
        data = _read_yaml(Path(path))
    elif Path(DEFAULT_CONFIG_FILE).is_file():
        logger.debug("Reading %s", DEFAULT_CONFIG_FILE)
        data = _read_yaml(Path(DEFAULT_CONFIG_FILE))

    run_fields = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - run_fields)
    if unknown:
        raise ValidationError(f"unknown configuration key '{unknown[0]}'", (unknown[0],))

    caps = Caps.from_mapping(_caps_from_env(data.pop("caps", None) or {}))
    config = RunConfig(caps=caps, **data)

    solver = os.environ.get(SOLVER_ENV)
    if solver and config.qbf_solver is None:
        config = replace(config, qbf_solver=solver)

    explicit = {k: v for k, v in overrides.items() if v is not None}
    if "caps" in explicit and isinstance(explicit["caps"], dict):
        explicit["caps"] = replace(config.caps, **explicit["caps"])
    return replace(config, **explicit)
