"""Shared fixtures: the worked examples shipped under instances/."""

import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from rafkit.core.parser import parse_af, parse_raf
from rafkit.decomposition.graph import primal_graph
from rafkit.decomposition.pace import read_td
from rafkit.qbf.io import read_qdimacs

INSTANCES = Path(__file__).resolve().parent.parent / "instances"

# the autouse environment fixture is function-scoped; it only resets state between examples
settings.register_profile("rafkit", suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("rafkit")


def instance_path(name: str) -> Path:
    return INSTANCES / name


def instance_text(name: str) -> str:
    return instance_path(name).read_text(encoding="utf-8")


@pytest.fixture
def instances_dir() -> Path:
    return INSTANCES


@pytest.fixture
def conference_af():
    return parse_af(instance_text("conference.af"), "conference.af")


@pytest.fixture
def research_raf():
    return parse_raf(instance_text("research.raf"), "research.raf")


@pytest.fixture
def research_td(research_raf):
    return read_td(instance_text("research.td"), primal_graph(research_raf), "research.td")


@pytest.fixture
def program_raf():
    return parse_raf(instance_text("program.raf"), "program.raf")


@pytest.fixture
def hybrid_af():
    return parse_af(instance_text("hybrid.af"), "hybrid.af")


@pytest.fixture
def exists_forall_qbf():
    return read_qdimacs(instance_text("exists_forall.qdimacs"), "exists_forall.qdimacs")


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch, tmp_path):
    """Keep a developer's raf.yaml, .env and RAF_* variables out of the tests."""
    monkeypatch.chdir(tmp_path)
    for name in list(os.environ):
        if name.startswith("RAF_"):
            monkeypatch.delenv(name, raising=False)
