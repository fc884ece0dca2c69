from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from trilink import EdgeList, Graph, build_graph

BLACK_COUNT = 6


def couple_edges() -> list[tuple[str, str]]:
    """Two tightly linked hub nodes, a set of mutual friends, and an outside
    node known to every friend but not (yet) to the hubs."""
    edges = [("b1", "b2")]
    for i in range(1, BLACK_COUNT + 1):
        k = f"k{i}"
        edges += [("b1", k), ("b2", k), ("r", k)]
    return edges


@pytest.fixture(scope="session")
def couple() -> Graph:
    return build_graph(EdgeList(tuple(couple_edges())))


@pytest.fixture(scope="session")
def triangle_pendant() -> Graph:
    # Triangle {1,2,3} plus pendant node 4 hanging off 3.
    return build_graph(EdgeList(((1, 2), (1, 3), (2, 3), (3, 4))))


@pytest.fixture(scope="session")
def k5() -> Graph:
    return build_graph(EdgeList(tuple((i, j) for i in range(5) for j in range(i + 1, 5))))


@pytest.fixture(scope="session")
def k4() -> Graph:
    return build_graph(EdgeList(tuple((i, j) for i in range(1, 5) for j in range(i + 1, 5))))


@pytest.fixture(scope="session")
def path3() -> Graph:
    return build_graph(EdgeList(((1, 2), (2, 3))))


@pytest.fixture(scope="session")
def k2() -> Graph:
    return build_graph(EdgeList(((0, 1),)))


@pytest.fixture(scope="session")
def star4() -> Graph:
    # Center c with leaves a, b, x, y.
    return build_graph(EdgeList((("c", "a"), ("c", "b"), ("c", "x"), ("c", "y"))))
