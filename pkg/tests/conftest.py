"""Pytest configuration and shared fixtures."""

from pathlib import Path

import pytest

from stochmatch.data import load_activation_file, load_instance_file
from stochmatch.domain.activation import PiecewiseConstantF, five_level_activation
from stochmatch.domain.instance import Edge, Instance, OnlineType
from stochmatch.domain.kernel import KernelInstance, classify_kernel
from stochmatch.domain.solution import FractionalSolution

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "data"
INSTANCES = DATA_DIR / "instances"
ACTIVATIONS = DATA_DIR / "activations"


@pytest.fixture
def instance_path():
    """Path of a shipped instance file by stem, e.g. instance_path("twin")."""
    def _path(name: str) -> Path:
        return INSTANCES / f"{name}.json"
    return _path


@pytest.fixture
def activation_path():
    """Path of a shipped activation file by stem, e.g. activation_path("five_level")."""
    def _path(name: str) -> Path:
        return ACTIVATIONS / f"{name}.f.json"
    return _path


def _kernel(name: str, enforce_excess: bool = True) -> KernelInstance:
    inst, x = load_instance_file(INSTANCES / f"{name}.json")
    return classify_kernel(inst, x, enforce_excess=enforce_excess)


@pytest.fixture
def twin_kernel() -> KernelInstance:
    """Offline j, j' with y = 0.3 and competitor rate 0.7 on each side."""
    return _kernel("twin")


@pytest.fixture
def two_vertex_kernel() -> KernelInstance:
    """One second-class type of rate 2 on j1, j2."""
    return _kernel("two_vertex")


@pytest.fixture
def triangle_kernel() -> KernelInstance:
    """Three offline vertices at y = 1 - ln 2 joined by second-class types."""
    return _kernel("triangle")


@pytest.fixture
def single_edge_kernel() -> KernelInstance:
    """A lone first-class edge with x = lambda = 1 (outside the LP polytope)."""
    return _kernel("single_edge", enforce_excess=False)


@pytest.fixture
def five_level_f() -> PiecewiseConstantF:
    return five_level_activation()


@pytest.fixture
def shipped_five_level_f() -> PiecewiseConstantF:
    return load_activation_file(ACTIVATIONS / "five_level.f.json")


@pytest.fixture
def single_edge_instance() -> Instance:
    return Instance(
        online_types=(OnlineType("i", 1.0, ("j",)),),
        offline_vertices=("j",),
        edges=(Edge("i", "j", 1.0),),
    )


@pytest.fixture
def single_edge_x():
    """Build a one-edge FractionalSolution with the given value."""
    def _x(value: float) -> FractionalSolution:
        return FractionalSolution({("i", "j"): value})
    return _x
