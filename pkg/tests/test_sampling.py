import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccsearch.graph import UNREACHABLE, Graph, bfs_depths
from ccsearch.sampling import SamplingParams, sample_subgraph

from conftest import random_graph


def path(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def test_depth_bound_on_path():
    sg = sample_subgraph(path(5), 2, SamplingParams(dp=1, l=1, h=10))
    assert sg.to_parent.tolist() == [1, 2, 3]
    assert sg.depths.tolist() == [1, 0, 1]
    assert sg.query == 1
    assert sg.graph.m == 2


def test_whole_levels_until_lower_bound():
    sg = sample_subgraph(path(7), 0, SamplingParams(dp=1, l=4, h=10))
    assert sg.to_parent.tolist() == [0, 1, 2, 3]


def test_lower_bound_admits_entire_level():
    star = Graph.from_edges([(0, v) for v in range(1, 6)] + [(5, 6)])
    sg = sample_subgraph(star, 1, SamplingParams(dp=1, l=3, h=10))
    # level 2 holds four vertices and is taken whole
    assert sg.to_parent.tolist() == [0, 1, 2, 3, 4, 5]


def test_hard_cap_stops_mid_level():
    star = Graph.from_edges([(0, v) for v in range(1, 9)])
    sg = sample_subgraph(star, 0, SamplingParams(dp=3, l=3, h=3))
    assert sg.to_parent.tolist() == [0, 1, 2]


def test_component_smaller_than_bounds():
    g = Graph.from_edges([(0, 1), (1, 2), (3, 4)])
    sg = sample_subgraph(g, 0, SamplingParams(dp=1, l=50, h=100))
    assert sg.to_parent.tolist() == [0, 1, 2]


def test_local_id_round_trip():
    sg = sample_subgraph(path(5), 2, SamplingParams(dp=1, l=1, h=10))
    assert sg.local_id(3) == 2
    with pytest.raises(KeyError):
        sg.local_id(0)


@pytest.mark.parametrize("dp, l, h", [(0, 1, 1), (1, 0, 5), (1, 6, 5)])
def test_params_validated(dp, l, h):
    with pytest.raises(ValueError):
        SamplingParams(dp, l, h)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sampling_invariants(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 80))
    g = Graph.from_edges(random_graph(rng, n, rng.uniform(0.01, 0.2)), n=n)
    q = int(rng.integers(n))
    h = int(rng.integers(1, n + 5))
    p = SamplingParams(int(rng.integers(1, 4)), int(rng.integers(1, h + 1)), h)
    sg = sample_subgraph(g, q, p)
    ref = bfs_depths(g, q)
    reach = np.flatnonzero(ref != UNREACHABLE)
    kept = sg.to_parent
    assert np.all(np.diff(kept) > 0)
    assert q in kept and kept[sg.query] == q
    assert len(kept) <= p.h
    assert len(kept) >= min(p.l, len(reach))
    assert sg.depths.tolist() == ref[kept].tolist()
    if len(kept) < p.h:
        # only whole levels, and every vertex within dp hops
        top = sg.depths.max()
        assert set(kept.tolist()) == set(reach[ref[reach] <= top].tolist())
        assert top >= min(p.dp, ref[reach].max())
    else:
        # the cap cuts at most the deepest level
        top = sg.depths.max()
        assert set(reach[ref[reach] < top].tolist()) <= set(kept.tolist())
    local = {(int(kept[a]), int(kept[b])) for a, b in sg.graph.edges()}
    inside = set(kept.tolist())
    expected = {(u, v) for u, v in g.edges().tolist() if u in inside and v in inside}
    assert local == expected
    again = sample_subgraph(g, q, p)
    assert again.to_parent.tolist() == kept.tolist()
