import io

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ccsearch.graph import (
    UNREACHABLE,
    Graph,
    GraphFormatError,
    bfs_depths,
    check_graph,
    induced_subgraph,
    is_connected_subset,
    load_edge_list,
)

from conftest import clique

edge_lists = st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), min_size=1, max_size=60)


def load(text):
    return load_edge_list(io.BytesIO(text.encode()))


def test_load_triangle():
    g = load("0 1\n1 2\n2 0\n")
    assert (g.n, g.m) == (3, 3)
    assert g.degrees.tolist() == [2, 2, 2]


def test_load_drops_duplicates_and_self_loops():
    g = load("0 1\n1 0\n0 0\n")
    assert (g.n, g.m) == (2, 1)


def test_load_remaps_external_ids():
    g = load("# comment\n5 9\n")
    assert (g.n, g.m) == (2, 1)
    assert g.external_ids.tolist() == [5, 9]
    assert g.dense_id(9) == 1


def test_load_accepts_paths_and_text_streams(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("1\t2\n2 3\n")
    assert load_edge_list(path).m == 2
    assert load_edge_list(str(path)).m == 2
    assert load_edge_list(io.StringIO("1 2\n")).m == 1


def test_load_reports_line_number():
    with pytest.raises(GraphFormatError, match="line 3"):
        load("0 1\n# fine\n1 x\n")
    with pytest.raises(GraphFormatError, match="line 1"):
        load("0 1 2\n")


def test_load_rejects_empty():
    with pytest.raises(GraphFormatError):
        load("# nothing\n")
    with pytest.raises(GraphFormatError):
        load("3 3\n")


@settings(max_examples=60, deadline=None)
@given(edge_lists)
def test_loaded_graph_invariants(pairs):
    text = "".join(f"{u} {v}\n" for u, v in pairs)
    if all(u == v for u, v in pairs):
        with pytest.raises(GraphFormatError):
            load(text)
        return
    g = load(text)
    assert g.degrees.sum() == 2 * g.m
    expected = {frozenset(p) for p in pairs if p[0] != p[1]}
    assert g.m == len(expected)
    for u in range(g.n):
        nbrs = g.neighbors(u)
        assert np.all(np.diff(nbrs) > 0)
        assert u not in nbrs
        for v in nbrs:
            assert g.has_edge(v, u)


def test_bfs_depths_path():
    g = Graph.from_edges([(0, 1), (1, 2)])
    assert bfs_depths(g, 0).tolist() == [0, 1, 2]


def test_bfs_depths_unreachable():
    g = Graph.from_edges([(0, 1), (2, 3)])
    d = bfs_depths(g, 0)
    assert d[2] == UNREACHABLE and d[3] == UNREACHABLE
    assert d[1] == 1


def test_bfs_depths_triangle(triangle):
    assert bfs_depths(triangle, 1).max() <= 1


def test_bfs_depths_rejects_bad_vertex(triangle):
    with pytest.raises(ValueError):
        bfs_depths(triangle, 3)


@settings(max_examples=40, deadline=None)
@given(edge_lists, st.integers(0, 15))
def test_bfs_depth_edges_differ_by_at_most_one(pairs, q):
    pairs = [p for p in pairs if p[0] != p[1]]
    if not pairs:
        return
    g = Graph.from_edges(pairs, n=16)
    d = bfs_depths(g, q)
    for u, v in g.edges():
        if d[u] != UNREACHABLE:
            assert d[v] != UNREACHABLE
            assert abs(d[u] - d[v]) <= 1


def test_is_connected_subset(triangle):
    path = Graph.from_edges([(0, 1), (1, 2)])
    assert is_connected_subset(triangle, [0, 1, 2])
    assert not is_connected_subset(path, [0, 2])
    assert is_connected_subset(path, [2])
    with pytest.raises(ValueError):
        is_connected_subset(path, [])


def test_induced_subgraph_small(triangle):
    sub, to_parent = induced_subgraph(triangle, {0, 1})
    assert (sub.n, sub.m) == (2, 1)
    assert to_parent.tolist() == [0, 1]


def test_induced_subgraph_one_k4_of_two(two_k4_bridge):
    sub, to_parent = induced_subgraph(two_k4_bridge, [4, 5, 6, 7])
    assert (sub.n, sub.m) == (4, 6)
    for a, b in sub.edges():
        assert two_k4_bridge.has_edge(to_parent[a], to_parent[b])


def test_induced_subgraph_identity(gstar):
    sub, to_parent = induced_subgraph(gstar, range(gstar.n))
    assert (sub.n, sub.m) == (gstar.n, gstar.m)
    assert sorted(sub.degrees) == sorted(gstar.degrees)
    assert to_parent.tolist() == list(range(gstar.n))


def test_induced_subgraph_rejects_empty(triangle):
    with pytest.raises(ValueError):
        induced_subgraph(triangle, [])


def test_check_graph_inputs():
    edges = np.array(clique(range(4)))
    g = check_graph(edges)
    assert (g.n, g.m) == (4, 6)
    a = sp.csr_matrix((np.ones(len(edges)), (edges[:, 0], edges[:, 1])), shape=(4, 4))
    assert check_graph(a).m == 6
    assert check_graph(a.toarray()).m == 6
    assert check_graph(g) is g
    with pytest.raises(ValueError):
        check_graph(np.zeros(3))
    with pytest.raises(ValueError):
        check_graph(np.zeros((3, 3)))
