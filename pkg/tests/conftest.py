"""
Shared pytest fixtures and configuration for Matchstick Graphs tests.
"""

import tempfile
from pathlib import Path
from types import MappingProxyType
from typing import Generator

import pytest

from matchstick_graphs.construct import Embedding, builtin_graph54, execute
from matchstick_graphs.geom import Coord
from matchstick_graphs.solve import solve_param, sweep

# Regression constants for the bundled 54-vertex construction.
SOLVED_MU = 38.067338069376
CLOSING_AT_37 = 1.012416296570961
CLOSING_AT_38 = 1.000705348169154
CLOSING_AT_39 = 0.991360566824549
CLEARANCE_AT_SOLVED = 0.016767402244546
SWEEP_MIN_CLEARANCE = 0.016736838015531


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory that gets cleaned up after the test."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture(scope="session")
def graph54():
    """The bundled construction."""
    return builtin_graph54()


@pytest.fixture(scope="session")
def solved(graph54):
    """SolveResult for the bundled construction over its script bracket."""
    return solve_param(graph54)


@pytest.fixture(scope="session")
def solved_embedding(graph54, solved):
    return execute(graph54, {"mu": solved.value})


@pytest.fixture(scope="session")
def embedding_at_38(graph54):
    return execute(graph54, {"mu": 38.0})


@pytest.fixture(scope="session")
def mu_range_embeddings(graph54):
    """Embeddings at 21 evenly spaced angles over [37, 39]."""
    return [(37.0 + 0.1 * k, execute(graph54, {"mu": 37.0 + 0.1 * k})) for k in range(21)]


@pytest.fixture(scope="session")
def sweep_samples(graph54):
    """201 uniform samples of mu over [37, 39]."""
    return sweep(graph54, 37.0, 39.0, 201)


@pytest.fixture
def triangle_script() -> str:
    """Smallest script with an open sign: one apex over a unit base."""
    return """\
# equilateral triangle
points A B
apex C base A B side ?
"""


@pytest.fixture
def square_script() -> str:
    """Unit square built from two right angles and a closing edge."""
    return """\
param phi = 90 range 80 100
points A B
angle_edge C base B ref A angle phi turn -
angle_edge D base A ref B angle 90 turn +
closing_edge C D
solve phi bracket 80 100
"""


def make_embedding(points, edges, closing=None):
    """Build an Embedding from {name: (x, y)} and [(a, b), ...]."""
    return Embedding(
        coords=MappingProxyType({name: Coord(*xy) for name, xy in points.items()}),
        edges=tuple(tuple(e) for e in edges),
        closing=tuple(closing) if closing else None,
    )


@pytest.fixture
def embedding_factory():
    """Provide the embedding helper to tests."""
    return make_embedding


@pytest.fixture
def crossed_embedding():
    """Two unit segments crossing in an X."""
    h = 0.5 ** 0.5
    return make_embedding(
        {"A": (0.0, 0.0), "B": (h, h), "C": (0.0, h), "D": (h, 0.0)},
        [("A", "B"), ("C", "D")],
    )


# Pytest markers for organizing tests
pytest_plugins = []
