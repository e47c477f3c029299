"""Shared fixtures: the five standing weight-system/face configurations."""

from dataclasses import dataclass

import pytest

from facekoszul import (
    FaceSubset,
    ModuleSpec,
    RootSystem,
    Weight,
    WeightSystem,
    lies_on_proper_face,
    root_system,
    weight_system,
)


@dataclass(frozen=True)
class Case:
    name: str
    rs: RootSystem
    ws: WeightSystem
    face: FaceSubset
    coord_cap: int  # cap on random base-weight coordinates, keeps runtimes sane


def _case(name, rs, spec_weights, subset, coord_cap) -> Case:
    spec = ModuleSpec(tuple((Weight(w), m) for w, m in spec_weights))
    ws = weight_system(rs, spec)
    face = lies_on_proper_face(ws, [Weight(w) for w in subset])
    assert face is not None, f"fixture subset for {name} must be a face"
    return Case(name, rs, ws, face, coord_cap)


@pytest.fixture(scope="session")
def a1():
    return root_system("A1")


@pytest.fixture(scope="session")
def a2():
    return root_system("A2")


@pytest.fixture(scope="session")
def b2():
    return root_system("B2")


@pytest.fixture(scope="session")
def c2():
    return root_system("C2")


@pytest.fixture(scope="session")
def a3():
    return root_system("A3")


@pytest.fixture(scope="session")
def a1_adjoint(a1):
    return weight_system(a1, ModuleSpec(((Weight((2,)), 1),)))


@pytest.fixture(scope="session")
def a2_adjoint(a2):
    return weight_system(a2, ModuleSpec(((Weight((1, 1)), 1),)))


@pytest.fixture(scope="session")
def cases(a1, a2, c2):
    return [
        _case("A1 adjoint, vertex", a1, [((2,), 1)], [(2,)], 3),
        _case("A2 adjoint, vertex", a2, [((1, 1), 1)], [(1, 1)], 3),
        _case("A2 adjoint, edge", a2, [((1, 1), 1)], [(2, -1), (1, 1)], 3),
        _case("C2 adjoint, vertex", c2, [((2, 0), 1)], [(2, 0)], 2),
        _case("A2 sum of fundamentals, vertex", a2, [((1, 0), 1), ((0, 1), 1)], [(1, 0)], 3),
    ]
