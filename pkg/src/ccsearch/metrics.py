"""Cut-based community scores and their incremental updates.

Every score here is a ratio of small integers.  Public functions return
floats; the ``*_fraction`` helpers return the exact ``(numerator,
denominator)`` pair so that algorithms can branch on the exact sign of a
gain instead of on a rounded difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, _gather_rows

__all__ = [
    "DegenerateCutError",
    "Community",
    "BatchStats",
    "cut_and_volume",
    "conductance",
    "subgraph_conductance",
    "quality_score",
    "batch_stats_add",
    "batch_stats_remove",
    "quality_after_add",
    "quality_after_remove",
    "gain_add",
    "gain_remove",
    "compare_fractions",
]


class DegenerateCutError(ValueError):
    """A score's denominator is zero (empty set, whole graph, zero volume)."""


def compare_fractions(a, b) -> int:
    """Sign of ``a - b`` for ``(num, den)`` pairs with positive denominators."""
    lhs = a[0] * b[1]
    rhs = b[0] * a[1]
    return (lhs > rhs) - (lhs < rhs)


def _as_array(s) -> np.ndarray:
    if isinstance(s, np.ndarray):
        return np.unique(s.astype(np.int64))
    return np.unique(np.fromiter((int(v) for v in s), dtype=np.int64))


def cut_and_volume(g: Graph, s) -> tuple[int, int]:
    """``(|E(s, V \\ s)|, vol(s))`` on the host graph."""
    members = _as_array(s)
    if len(members) == 0:
        return 0, 0
    mask = np.zeros(g.n, dtype=bool)
    mask[members] = True
    counts, nbrs = _gather_rows(g, members)
    vol = int(counts.sum())
    internal = int(mask[nbrs].sum())
    return vol - internal, vol


def conductance(g: Graph, s, exact: bool = False):
    """Cut size over the smaller side's volume.

    Raises :class:`DegenerateCutError` when either side of the cut has zero
    volume.  With ``exact=True`` a :class:`~fractions.Fraction` is returned.
    """
    cut, vol = cut_and_volume(g, s)
    den = min(vol, g.volume - vol)
    if den <= 0:
        raise DegenerateCutError(f"conductance undefined for vol(S)={vol}, 2m={g.volume}")
    return Fraction(cut, den) if exact else cut / den


@dataclass
class Community:
    """A vertex set with cached internal volume and cut size.

    ``d_in`` is twice the number of internal edges and ``e_out`` the number
    of edges leaving the set, both with respect to the graph the community
    lives on.  ``anchor`` is the query vertex, which every update keeps.
    """

    members: set
    d_in: int
    e_out: int
    anchor: int

    @classmethod
    def from_members(cls, g: Graph, members, anchor: int) -> "Community":
        members = {int(v) for v in members}
        if int(anchor) not in members:
            raise ValueError(f"anchor {anchor} is not a member")
        cut, vol = cut_and_volume(g, members)
        return cls(members, vol - cut, cut, int(anchor))

    @property
    def volume(self) -> int:
        return self.d_in + self.e_out

    def quality_fraction(self) -> tuple[int, int]:
        if self.volume == 0:
            raise DegenerateCutError("community has zero volume")
        return self.d_in, self.volume

    def add(self, stats: "BatchStats", batch) -> None:
        """Commit a batch whose stats came from :func:`batch_stats_add`."""
        self.d_in += stats.d_in_cross
        self.e_out += stats.e_out_sbar - stats.e_out_s
        self.members.update(int(v) for v in batch)

    def remove(self, stats: "BatchStats", batch) -> None:
        """Commit a batch whose stats came from :func:`batch_stats_remove`."""
        batch = {int(v) for v in batch}
        if self.anchor in batch:
            raise ValueError("cannot remove the anchor vertex")
        self.d_in -= stats.d_in_cross
        self.e_out -= stats.e_out_sbar - stats.e_out_s
        self.members.difference_update(batch)

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in self.members


@dataclass(frozen=True)
class BatchStats:
    """Link counts between a batch of vertices and a community core.

    ``d_in_cross`` is ``2 * (links(core, batch) + links(batch, batch))``,
    ``e_out_s`` is ``links(core, batch)`` and ``e_out_sbar`` counts batch
    edges to vertices outside both the core and the batch.  The core is the
    community itself when adding and the community minus the batch when
    removing.
    """

    d_in_cross: int = 0
    e_out_s: int = 0
    e_out_sbar: int = 0


def _link_counts(g: Graph, core, batch) -> BatchStats:
    to_core = within = outside = 0
    indptr, indices = g.indptr, g.indices
    for v in batch:
        for w in indices[indptr[v]:indptr[v + 1]].tolist():
            if w in batch:
                within += 1
            elif w in core:
                to_core += 1
            else:
                outside += 1
    # edges inside the batch were seen from both endpoints
    return BatchStats(2 * to_core + within, to_core, outside)


def batch_stats_add(g: Graph, c: Community, batch) -> BatchStats:
    batch = {int(v) for v in batch}
    if batch & c.members:
        raise ValueError("batch overlaps the community")
    return _link_counts(g, c.members, batch)


def batch_stats_remove(g: Graph, c: Community, batch) -> BatchStats:
    batch = {int(v) for v in batch}
    if not batch <= c.members:
        raise ValueError("batch is not contained in the community")
    if c.anchor in batch:
        raise ValueError("batch contains the anchor vertex")
    return _link_counts(g, _Without(c.members, batch), batch)


class _Without:
    """Membership view of ``base - removed`` without copying ``base``."""

    __slots__ = ("base", "removed")

    def __init__(self, base, removed):
        self.base = base
        self.removed = removed

    def __contains__(self, v):
        return v in self.base and v not in self.removed


def _checked(num: int, den: int) -> tuple[int, int]:
    if den <= 0:
        raise DegenerateCutError("zero-volume community")
    return num, den


def subgraph_conductance(c: Community) -> float:
    _, den = c.quality_fraction()
    return c.e_out / den


def quality_score(c: Community) -> float:
    num, den = c.quality_fraction()
    return num / den


def after_add_fraction(c: Community, b: BatchStats) -> tuple[int, int]:
    return _checked(
        c.d_in + b.d_in_cross,
        c.d_in + c.e_out + b.d_in_cross + (b.e_out_sbar - b.e_out_s),
    )


def after_remove_fraction(c: Community, b: BatchStats) -> tuple[int, int]:
    return _checked(
        c.d_in - b.d_in_cross,
        c.d_in + c.e_out - b.d_in_cross - (b.e_out_sbar - b.e_out_s),
    )


def quality_after_add(c: Community, b: BatchStats) -> float:
    num, den = after_add_fraction(c, b)
    return num / den


def quality_after_remove(c: Community, b: BatchStats) -> float:
    num, den = after_remove_fraction(c, b)
    return num / den


def gain_add(c: Community, b: BatchStats) -> float:
    return quality_after_add(c, b) - quality_score(c)


def gain_remove(c: Community, b: BatchStats) -> float:
    return quality_after_remove(c, b) - quality_score(c)
