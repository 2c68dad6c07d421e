import itertools

import numpy as np
import pytest

from ccsearch.graph import Graph

# 11-vertex reconstruction: a 4-vertex community around v0, a K4 on v7..v10,
# joined by the chain v0-v4-v5-v6-v7
GSTAR_EDGES = [
    (0, 1), (0, 2), (0, 3), (1, 2), (2, 3),
    (7, 8), (7, 9), (7, 10), (8, 9), (8, 10), (9, 10),
    (0, 4), (4, 5), (5, 6), (6, 7),
]


def clique(vertices):
    return list(itertools.combinations(vertices, 2))


def random_graph(rng, n, p):
    """Erdos-Renyi edge array on ``n`` vertices (possibly edgeless)."""
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return np.column_stack([iu[keep], ju[keep]])


def random_connected_graph(rng, n, p):
    """Random spanning tree plus Erdos-Renyi extras, so always connected."""
    order = rng.permutation(n)
    tree = [(int(order[i]), int(order[rng.integers(i)])) for i in range(1, n)]
    extra = random_graph(rng, n, p)
    edges = np.concatenate([np.array(tree, dtype=np.int64).reshape(-1, 2), extra])
    return Graph.from_edges(edges, n=n)


@pytest.fixture
def gstar():
    return Graph.from_edges(GSTAR_EDGES)


@pytest.fixture
def triangle():
    return Graph.from_edges([(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def two_k4_bridge():
    return Graph.from_edges(clique(range(4)) + clique(range(4, 8)) + [(3, 4)])


@pytest.fixture
def expansion_example():
    """K4 seed {0,1,2,3} with eight cut edges.

    Vertex 4 has one link to the seed, vertex 5 one link to the seed and one
    to vertex 4; both have two more links into an outer clique.  Vertices
    6..11 each have one seed link and four outer links.
    """
    outer = list(range(12, 30))
    edges = clique(range(4))
    edges += [(0, 4), (1, 5), (4, 5), (4, 12), (4, 13), (5, 14), (5, 15)]
    for i, p in enumerate(range(6, 12)):
        edges.append((i % 4, p))
        edges += [(p, outer[(4 * i + j) % len(outer)]) for j in range(4)]
    edges += clique(outer)
    return Graph.from_edges(edges)


@pytest.fixture
def verification_example():
    """Community {5..12} with query 6: 15 internal edges, 5 cut edges all at
    vertex 5, and vertex 8 an articulation point of {6..12}."""
    edges = [(5, 6), (5, 7), (5, 8)]
    edges += [(5, x) for x in range(5)]
    edges += clique(range(5))
    edges += [(6, 7), (7, 8), (6, 8)]
    edges += [e for e in clique([8, 9, 10, 11, 12]) if e != (9, 12)]
    return Graph.from_edges(edges)


ACCEPTANCE_LINES = {}


def record_criterion(number, ok, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
