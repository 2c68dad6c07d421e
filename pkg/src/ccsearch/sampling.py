"""Query-local subgraph extraction by depth- and size-bounded BFS."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, _check_vertex, induced_subgraph

__all__ = ["SamplingParams", "SampledSubgraph", "sample_subgraph"]


@dataclass(frozen=True)
class SamplingParams:
    """BFS bounds.

    Every vertex within ``dp`` hops is taken; deeper levels are added whole
    while fewer than ``l`` vertices are sampled; admission stops as soon as
    ``h`` vertices are sampled.
    """

    dp: int = 3
    l: int = 300
    h: int = 5000

    def __post_init__(self):
        if self.dp < 1:
            raise ValueError(f"dp must be >= 1, got {self.dp}")
        if not 1 <= self.l <= self.h:
            raise ValueError(f"need 1 <= l <= h, got l={self.l}, h={self.h}")


@dataclass
class SampledSubgraph:
    graph: Graph
    to_parent: np.ndarray
    depths: np.ndarray
    query: int

    @property
    def n(self) -> int:
        return self.graph.n

    def local_id(self, parent_vertex: int) -> int:
        i = int(np.searchsorted(self.to_parent, parent_vertex))
        if i == len(self.to_parent) or self.to_parent[i] != parent_vertex:
            raise KeyError(parent_vertex)
        return i


def sample_subgraph(g: Graph, q: int, params: SamplingParams = SamplingParams()) -> SampledSubgraph:
    """Sample the neighborhood of ``q``; the edge set is the full induced
    subgraph on the admitted vertices."""
    _check_vertex(g, q)
    q = int(q)
    depth = {q: 0}
    level = [q]
    d = 0
    indptr, indices = g.indptr, g.indices
    full = len(depth) >= params.h
    while level and not full:
        if d >= params.dp and len(depth) >= params.l:
            break
        nxt = []
        for u in sorted(level):
            for v in indices[indptr[u]:indptr[u + 1]].tolist():
                if v in depth:
                    continue
                depth[v] = d + 1
                nxt.append(v)
                if len(depth) >= params.h:
                    full = True
                    break
            if full:
                break
        level = nxt
        d += 1
    sub, to_parent = induced_subgraph(g, depth.keys())
    depths = np.array([depth[int(v)] for v in to_parent], dtype=np.int64)
    return SampledSubgraph(sub, to_parent, depths, int(np.searchsorted(to_parent, q)))
