"""Immutable undirected graphs in compressed sparse row form.

Vertices are dense integers ``0 .. n-1``.  The ids found in an edge-list
file are kept in :attr:`Graph.external_ids` so results can be reported in
the file's own id space.
"""

from __future__ import annotations

import io
import os
from collections import deque
from typing import IO, Iterable, Union

import numpy as np
import scipy.sparse as sp

__all__ = [
    "Graph",
    "GraphFormatError",
    "UNREACHABLE",
    "load_edge_list",
    "bfs_depths",
    "is_connected_subset",
    "induced_subgraph",
    "check_graph",
]

#: depth assigned to vertices outside the query vertex's component
UNREACHABLE = -1


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input or an edgeless graph."""


class Graph:
    """Simple undirected graph stored as CSR arrays.

    Neighbor lists are sorted ascending; there are no self-loops and no
    parallel edges.  Instances are treated as read-only once built.

    Parameters
    ----------
    indptr, indices : ndarray
        CSR row pointer and column index arrays of the symmetric adjacency.
    external_ids : ndarray, optional
        Source-file id of every dense vertex.  Defaults to ``arange(n)``.
    """

    __slots__ = ("indptr", "indices", "degrees", "external_ids", "_ext_index")

    def __init__(self, indptr, indices, external_ids=None):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.degrees = np.diff(self.indptr)
        n = len(self.indptr) - 1
        if external_ids is None:
            external_ids = np.arange(n, dtype=np.int64)
        self.external_ids = np.asarray(external_ids, dtype=np.int64)
        if len(self.external_ids) != n:
            raise ValueError("external_ids must have one entry per vertex")
        self._ext_index = None

    @classmethod
    def from_edges(cls, edges, n=None, external_ids=None) -> "Graph":
        """Build a graph from an ``(k, 2)`` array of dense endpoint pairs.

        Self-loops are dropped and each undirected edge is kept once no
        matter how many times, or in which orientation, it is listed.
        """
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(edges.max()) + 1 if len(edges) else 0
        if len(edges) and (edges.min() < 0 or edges.max() >= n):
            raise ValueError("edge endpoint out of range")
        u, v = edges[:, 0], edges[:, 1]
        keep = u != v
        u, v = u[keep], v[keep]
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        codes = np.unique(src * n + dst)
        src, dst = np.divmod(codes, n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, dst, external_ids)

    @classmethod
    def from_scipy(cls, adjacency) -> "Graph":
        """Build a graph from a square sparse (or dense) adjacency matrix.

        The pattern is symmetrized and weights are ignored.
        """
        a = sp.coo_matrix(adjacency)
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        mask = a.data != 0
        edges = np.column_stack([a.row[mask], a.col[mask]])
        return cls.from_edges(edges, n=a.shape[0])

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def volume(self) -> int:
        """Total degree, ``2 m``."""
        return len(self.indices)

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def edges(self) -> np.ndarray:
        """Every edge once, as ``(u, v)`` rows with ``u < v``."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def to_scipy(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int8)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def dense_id(self, external_id: int) -> int:
        """Map a source-file id to its dense id; ``KeyError`` if absent."""
        if self._ext_index is None:
            self._ext_index = {int(x): i for i, x in enumerate(self.external_ids)}
        return self._ext_index[int(external_id)]

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


Source = Union[str, os.PathLike, bytes, IO]


def _read_lines(source: Source) -> Iterable[str]:
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode("utf-8"))
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return io.StringIO(fh.read().decode("utf-8"))
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return io.StringIO(data)


def load_edge_list(source: Source) -> Graph:
    """Load a whitespace-separated edge list (SNAP style).

    ``source`` may be a path, raw bytes, or an open binary/text stream.
    Lines starting with ``#`` and blank lines are skipped.  External ids are
    remapped to dense ids in ascending external-id order.

    Raises
    ------
    GraphFormatError
        On a line that is not two integers (the message carries the line
        number) or when no edge survives self-loop removal.
    """
    us, vs = [], []
    for lineno, line in enumerate(_read_lines(source), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two vertex ids, got {line!r}")
        try:
            us.append(int(parts[0]))
            vs.append(int(parts[1]))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id in {line!r}") from None
    raw = np.array([us, vs], dtype=np.int64).T.reshape(-1, 2)
    if (raw < 0).any():
        bad = int(np.argmax((raw < 0).any(axis=1)))
        raise GraphFormatError(f"negative vertex id in edge {bad + 1}")
    # isolated vertices cannot be expressed in this format, so drop ids
    # that only ever occur in self-loops
    raw = raw[raw[:, 0] != raw[:, 1]]
    if len(raw) == 0:
        raise GraphFormatError("edge list contains no edges")
    ext, dense = np.unique(raw, return_inverse=True)
    return Graph.from_edges(dense.reshape(-1, 2), n=len(ext), external_ids=ext)


def bfs_depths(g: Graph, q: int) -> np.ndarray:
    """Hop distance from ``q`` to every vertex, ``UNREACHABLE`` elsewhere."""
    _check_vertex(g, q)
    depth = np.full(g.n, UNREACHABLE, dtype=np.int64)
    depth[q] = 0
    indptr, indices = g.indptr, g.indices
    queue = deque([q])
    while queue:
        u = queue.popleft()
        du = depth[u] + 1
        for v in indices[indptr[u]:indptr[u + 1]].tolist():
            if depth[v] == UNREACHABLE:
                depth[v] = du
                queue.append(v)
    return depth


def is_connected_subset(g: Graph, s) -> bool:
    """Whether the subgraph induced by the vertex set ``s`` is connected."""
    members = set(int(v) for v in s)
    if not members:
        raise ValueError("vertex set must be nonempty")
    start = next(iter(members))
    seen = {start}
    stack = [start]
    indptr, indices = g.indptr, g.indices
    while stack:
        u = stack.pop()
        for v in indices[indptr[u]:indptr[u + 1]].tolist():
            if v in members and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(members)


def _gather_rows(g: Graph, rows: np.ndarray):
    counts = g.degrees[rows]
    total = int(counts.sum())
    offsets = np.repeat(g.indptr[rows] - np.concatenate([[0], np.cumsum(counts)[:-1]]), counts)
    return counts, g.indices[offsets + np.arange(total)]


def induced_subgraph(g: Graph, s):
    """Subgraph induced by ``s``.

    Returns ``(sub, to_parent)`` where local vertex ``i`` of ``sub`` is
    parent vertex ``to_parent[i]``.  Local ids follow ascending parent id, so
    orderings by id agree between the two graphs.
    """
    members = np.unique(np.fromiter((int(v) for v in s), dtype=np.int64))
    if len(members) == 0:
        raise ValueError("vertex set must be nonempty")
    _check_vertex(g, members[0])
    _check_vertex(g, members[-1])
    local = np.full(g.n, -1, dtype=np.int64)
    local[members] = np.arange(len(members))
    counts, nbrs = _gather_rows(g, members)
    mapped = local[nbrs]
    keep = mapped >= 0
    row_of = np.repeat(np.arange(len(members)), counts)
    indptr = np.zeros(len(members) + 1, dtype=np.int64)
    np.cumsum(np.bincount(row_of[keep], minlength=len(members)), out=indptr[1:])
    sub = Graph(indptr, mapped[keep], g.external_ids[members])
    return sub, members


def _check_vertex(g: Graph, q) -> None:
    if not 0 <= int(q) < g.n:
        raise ValueError(f"vertex {q} out of range for graph with n={g.n}")


def check_graph(X) -> Graph:
    """Coerce estimator input to a :class:`Graph`.

    Accepts a :class:`Graph`, a square scipy sparse / dense adjacency
    matrix, or an ``(m, 2)`` integer edge array.
    """
    if isinstance(X, Graph):
        g = X
    elif sp.issparse(X):
        g = Graph.from_scipy(X)
    else:
        arr = np.asarray(X)
        if arr.ndim != 2:
            raise ValueError(f"expected a graph, adjacency matrix or edge array, got ndim={arr.ndim}")
        if arr.shape[1] == 2 and arr.shape[0] != 2:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError("edge array must hold integer vertex ids")
            g = Graph.from_edges(arr)
        elif arr.shape[0] == arr.shape[1]:
            g = Graph.from_scipy(arr)
        else:
            raise ValueError(f"cannot interpret array of shape {arr.shape} as a graph")
    if g.m == 0:
        raise GraphFormatError("graph has no edges")
    return g
