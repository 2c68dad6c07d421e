"""Sampling-based community search driven by the quality score.

The search runs on a sampled subgraph: seed with the largest clique that
contains the query, then alternate batch expansion and boundary pruning
until neither changes the community.  All scores are computed with the
sampled subgraph's degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, _check_vertex
from .metrics import Community, after_remove_fraction, batch_stats_remove, compare_fractions
from .sampling import SampledSubgraph, SamplingParams, sample_subgraph

__all__ = [
    "SccsParams",
    "max_clique_containing",
    "initial_community",
    "expansion",
    "verification",
    "sccs_search",
]


@dataclass(frozen=True)
class SccsParams:
    sampling: SamplingParams = field(default_factory=SamplingParams)
    count: int = 2
    max_rounds: int = 100

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.max_rounds < 1:
            raise ValueError(f"max_rounds must be >= 1, got {self.max_rounds}")


def max_clique_containing(g: Graph, q: int) -> list:
    """Largest clique through ``q``, as a sorted vertex list.

    Among cliques of maximum size the lexicographically smallest sorted list
    is returned.  Branch and bound with Tomita pivoting over ``N(q)``;
    exponential in the worst case.
    """
    nbrs = g.neighbors(q).tolist()
    if not nbrs:
        return [q]
    cand = set(nbrs)
    adj = {v: cand.intersection(g.neighbors(v).tolist()) for v in nbrs}
    best = [sorted([q, min(nbrs)])]

    def consider(clique):
        found = sorted(clique)
        b = best[0]
        if len(found) > len(b) or (len(found) == len(b) and found < b):
            best[0] = found

    def expand(r, p, x):
        if len(r) + len(p) < len(best[0]):
            return
        if not p:
            if not x:
                consider(r)
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand([q], cand, set())
    return best[0]


def initial_community(sg: SampledSubgraph, q: int | None = None) -> Community:
    """Seed community: the maximum clique through ``q`` in the sample.

    ``q`` is a local vertex id and defaults to the sample's query vertex.
    """
    if q is None:
        q = sg.query
    return Community.from_members(sg.graph, max_clique_containing(sg.graph, q), q)


def _copy(c: Community) -> Community:
    return Community(set(c.members), c.d_in, c.e_out, c.anchor)


def expansion(g: Graph, c: Community, count: int = 2, trajectory=None):
    """Grow ``c`` by batches of at most ``count`` vertices.

    Vertices are appended one at a time to a tentative batch, each time the
    frontier vertex that maximizes the quality of committed set plus batch
    (ties to the smallest id).  A batch is committed as soon as it does not
    lower the committed quality; ``count`` consecutive additions without
    that happening, or an empty frontier, end the expansion and the
    uncommitted batch is dropped.

    Returns ``(community, changed)``.
    """
    s = _copy(c)
    degrees = g.degrees
    indptr, indices = g.indptr, g.indices
    tentative_members = set(s.members)
    din, vol = s.d_in, s.volume
    links = {}
    for u in s.members:
        for w in indices[indptr[u]:indptr[u + 1]].tolist():
            if w not in tentative_members:
                links[w] = links.get(w, 0) + 1
    batch = []
    changed = False
    while links and len(batch) < count:
        best_v, best_num, best_den = -1, 0, 1
        for v, k in links.items():
            num = din + 2 * k
            den = vol + int(degrees[v])
            cmp = num * best_den - best_num * den
            if best_v < 0 or cmp > 0 or (cmp == 0 and v < best_v):
                best_v, best_num, best_den = v, num, den
        v = best_v
        del links[v]
        tentative_members.add(v)
        for w in indices[indptr[v]:indptr[v + 1]].tolist():
            if w not in tentative_members:
                links[w] = links.get(w, 0) + 1
        din, vol = best_num, best_den
        batch.append(v)
        if s.volume and compare_fractions((din, vol), (s.d_in, s.volume)) < 0:
            continue
        s.members.update(batch)
        s.d_in, s.e_out = din, vol - din
        batch = []
        changed = True
        if trajectory is not None:
            trajectory.append(("expand", din, vol))
    return s, changed


def _connected_without(g: Graph, members: set, removed: int, start: int) -> bool:
    indptr, indices = g.indptr, g.indices
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in indices[indptr[u]:indptr[u + 1]].tolist():
            if w != removed and w in members and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(members) - 1


def verification(g: Graph, c: Community, trajectory=None):
    """One pruning pass over the boundary of ``c``.

    Boundary members other than the anchor are visited in ascending id; a
    vertex is removed when that strictly raises the quality score and the
    rest stays connected.  Vertices that become boundary during the pass
    wait for the next call.

    Returns ``(community, changed)``.
    """
    s = _copy(c)
    indptr, indices = g.indptr, g.indices
    boundary = sorted(
        v for v in s.members
        if v != s.anchor and any(w not in s.members for w in indices[indptr[v]:indptr[v + 1]].tolist())
    )
    changed = False
    for v in boundary:
        stats = batch_stats_remove(g, s, (v,))
        if s.volume - stats.d_in_cross - (stats.e_out_sbar - stats.e_out_s) <= 0:
            continue
        after = after_remove_fraction(s, stats)
        if compare_fractions(after, s.quality_fraction()) <= 0:
            continue
        if not _connected_without(g, s.members, v, s.anchor):
            continue
        s.remove(stats, (v,))
        changed = True
        if trajectory is not None:
            trajectory.append(("remove", after[0], after[1]))
    return s, changed


def search_sample(sg: SampledSubgraph, params: SccsParams = SccsParams(), trajectory=None) -> Community:
    """Run seeding and the expansion/verification rounds on a sample.

    The result is a :class:`Community` on ``sg.graph`` (local ids).
    """
    g = sg.graph
    c = initial_community(sg)
    if trajectory is not None and c.volume:
        trajectory.append(("init", c.d_in, c.volume))
    for _ in range(params.max_rounds):
        c, grew = expansion(g, c, params.count, trajectory)
        c, shrank = verification(g, c, trajectory)
        if not (grew or shrank):
            break
    return c


def sccs_search(g: Graph, q: int, params: SccsParams = SccsParams(), trajectory=None) -> Community:
    """Community of ``q`` found on its sampled neighborhood, in ``g``'s ids.

    If ``trajectory`` is a list, every committed quality change is appended
    to it as ``(stage, numerator, denominator)``.
    """
    _check_vertex(g, q)
    sg = sample_subgraph(g, q, params.sampling)
    local = search_sample(sg, params, trajectory)
    members = sg.to_parent[sorted(local.members)].tolist()
    return Community.from_members(g, members, q)
