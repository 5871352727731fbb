from pathlib import Path

import pytest

from edgedp.graph import Graph

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
FACEBOOK_EDGES = DATA_DIR / "686.edges"


@pytest.fixture(scope="session")
def facebook_path() -> Path:
    assert FACEBOOK_EDGES.exists(), f"dataset missing: {FACEBOOK_EDGES}"
    return FACEBOOK_EDGES


# The three four-node graphs used as worked examples: a complete graph, the
# four-cycle obtained by removing both diagonals (distance 2), and a
# three-edge path-shaped graph (distance 3 from the complete graph).
@pytest.fixture
def k4() -> Graph:
    return Graph.complete(4)


@pytest.fixture
def c4() -> Graph:
    return Graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


@pytest.fixture
def p4_three_edges() -> Graph:
    return Graph(4, [(2, 3), (3, 4), (1, 4)])
