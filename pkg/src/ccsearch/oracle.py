"""Exhaustive minimum-conductance search for tiny graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, _check_vertex

__all__ = ["OracleResult", "brute_force_ccs"]

MAX_VERTICES = 20


@dataclass(frozen=True)
class OracleResult:
    best_set: tuple
    best_conductance: Fraction
    optima_count: int


def _connected(mask: int, start: int, nbr_masks) -> bool:
    reach = 1 << start
    frontier = reach
    while frontier:
        grown = 0
        while frontier:
            low = frontier & -frontier
            grown |= nbr_masks[low.bit_length() - 1]
            frontier ^= low
        grown &= mask & ~reach
        reach |= grown
        frontier = grown
    return reach == mask


def brute_force_ccs(g: Graph, q: int, max_vertices: int = MAX_VERTICES) -> OracleResult:
    """Minimum conductance over all connected vertex sets containing ``q``.

    The whole vertex set and zero-volume sets are not candidates.  Ties go
    to the smaller set, then to the lexicographically smaller member list.
    """
    if g.n > max_vertices:
        raise ValueError(f"refusing exhaustive search over n={g.n} > {max_vertices} vertices")
    _check_vertex(g, q)
    n = g.n
    nbr_masks = [sum(1 << int(w) for w in g.neighbors(v)) for v in range(n)]
    degrees = [int(d) for d in g.degrees]
    total = g.volume
    others = [v for v in range(n) if v != q]
    best_key = None
    best = None
    ties = 0
    for bits in range(1 << len(others)):
        mask = 1 << q
        b, i = bits, 0
        while b:
            if b & 1:
                mask |= 1 << others[i]
            b >>= 1
            i += 1
        members = [v for v in range(n) if mask >> v & 1]
        vol = sum(degrees[v] for v in members)
        den = min(vol, total - vol)
        if den <= 0 or not _connected(mask, q, nbr_masks):
            continue
        internal = sum(bin(nbr_masks[v] & mask).count("1") for v in members)
        phi = Fraction(vol - internal, den)
        key = (phi, len(members), members)
        if best is None or phi < best:
            best, best_key, ties = phi, key, 1
        elif phi == best:
            ties += 1
            if key < best_key:
                best_key = key
    if best is None:
        raise ValueError(f"no connected set containing {q} has a defined conductance")
    return OracleResult(tuple(best_key[2]), best, ties)
