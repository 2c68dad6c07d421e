"""Forward-push personalized PageRank and the connected sweep cut."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph, _check_vertex
from .metrics import Community

__all__ = ["PprParams", "PprState", "forward_push", "pprcs_search", "sweep_order"]


@dataclass(frozen=True)
class PprParams:
    """Teleport probability ``alpha`` and push threshold ``r_max``."""

    alpha: float = 0.15
    r_max: float = 1e-4

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.r_max > 0.0:
            raise ValueError(f"r_max must be positive, got {self.r_max}")


@dataclass
class PprState:
    """Estimate and residual vectors, stored as ``{vertex: value}`` for
    nonzero entries only."""

    pi_hat: dict
    residual: dict
    pushes: int = 0

    def total_mass(self) -> float:
        return sum(self.pi_hat.values()) + sum(self.residual.values())


@njit(cache=True)
def _push_kernel(indptr, indices, degrees, q, alpha, r_max):
    n = degrees.shape[0]
    pi = np.zeros(n)
    r = np.zeros(n)
    touched = np.zeros(n, dtype=np.bool_)
    in_queue = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    head = 0
    size = 0
    r[q] = 1.0
    touched[q] = True
    if r[q] >= r_max * degrees[q]:
        queue[0] = q
        size = 1
        in_queue[q] = True
    pushes = 0
    while size > 0:
        t = queue[head]
        head = (head + 1) % n
        size -= 1
        in_queue[t] = False
        rt = r[t]
        dt = degrees[t]
        if rt < r_max * dt:
            continue
        pushes += 1
        share = (1.0 - alpha) * rt / dt
        for k in range(indptr[t], indptr[t + 1]):
            u = indices[k]
            r[u] += share
            touched[u] = True
            if not in_queue[u] and r[u] >= r_max * degrees[u]:
                queue[(head + size) % n] = u
                size += 1
                in_queue[u] = True
        pi[t] += alpha * rt
        r[t] = 0.0
    return pi, r, np.nonzero(touched)[0], pushes


def _push(g: Graph, q: int, params: PprParams):
    _check_vertex(g, q)
    if g.degree(q) == 0:
        raise ValueError(f"query vertex {q} is isolated; forward push needs at least one neighbor")
    return _push_kernel(g.indptr, g.indices, g.degrees, int(q), float(params.alpha), float(params.r_max))


def forward_push(g: Graph, q: int, params: PprParams = PprParams()) -> PprState:
    """Approximate PPR seeded at ``q`` by pushing residual mass.

    A vertex ``t`` is pushed while ``r(t) >= r_max * d(t)``; active vertices
    are processed first-in first-out.
    """
    pi, r, touched, pushes = _push(g, q, params)
    pi_hat = {int(v): float(pi[v]) for v in touched if pi[v] > 0.0}
    residual = {int(v): float(r[v]) for v in touched if r[v] > 0.0}
    return PprState(pi_hat, residual, int(pushes))


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _sweep_kernel(order, indptr, indices, degrees, total_volume):
    n = degrees.shape[0]
    in_prefix = np.zeros(n, dtype=np.bool_)
    parent = np.arange(n)
    vol = 0
    internal = 0
    components = 0
    best_len = 0
    best_cut = 1
    best_den = 0
    for i in range(order.shape[0]):
        v = order[i]
        in_prefix[v] = True
        vol += degrees[v]
        components += 1
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if in_prefix[w]:
                internal += 1
                a = _find(parent, v)
                b = _find(parent, w)
                if a != b:
                    parent[b] = a
                    components -= 1
        if components != 1:
            continue
        den = min(vol, total_volume - vol)
        if den <= 0:
            continue
        cut = vol - 2 * internal
        # strict improvement keeps the earliest prefix among ties
        if best_den == 0 or cut * best_den < best_cut * den:
            best_len = i + 1
            best_cut = cut
            best_den = den
    return best_len, best_cut, best_den


def sweep_order(g: Graph, q: int, pi: np.ndarray) -> np.ndarray:
    """Vertices ranked for the sweep: ``q`` first, then every vertex with
    positive estimate by descending ``pi / degree``, ties by ascending id."""
    support = np.flatnonzero(pi > 0.0)
    support = support[support != q]
    y = pi[support] / g.degrees[support]
    ranked = support[np.lexsort((support, -y))]
    return np.concatenate([[q], ranked]).astype(np.int64)


def pprcs_search(g: Graph, q: int, params: PprParams = PprParams()) -> Community:
    """Lowest-conductance connected prefix of the PPR ranking.

    Only prefixes whose induced subgraph is connected compete; prefixes
    covering the whole graph volume are skipped.  Falls back to ``{q}`` when
    no prefix qualifies.
    """
    pi, _, _, _ = _push(g, q, params)
    order = sweep_order(g, q, pi)
    best_len, _, _ = _sweep_kernel(order, g.indptr, g.indices, g.degrees, g.volume)
    members = order[: max(best_len, 1)].tolist()
    return Community.from_members(g, members, q)
