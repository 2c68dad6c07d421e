"""Ground-truth evaluation: community files, F1, query sampling, reports,
and a planted-partition generator for synthetic benchmarks."""

from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import Graph, GraphFormatError, _read_lines, is_connected_subset
from .metrics import DegenerateCutError, conductance

__all__ = [
    "GroundTruth",
    "EvalReport",
    "load_ground_truth",
    "f1_score",
    "select_queries",
    "generate_planted_partition",
    "evaluate_query",
    "summarize",
    "MIN_COMMUNITY_SIZE",
]

logger = logging.getLogger(__name__)

MIN_COMMUNITY_SIZE = 3


@dataclass
class GroundTruth:
    """Labelled communities in dense vertex ids.

    ``index`` maps a vertex to the positions of the communities holding it.
    ``skipped_ids`` counts member ids that were not in the graph.
    """

    communities: list
    index: dict = field(default_factory=dict)
    skipped_ids: int = 0

    def __post_init__(self):
        self.communities = [frozenset(int(v) for v in c) for c in self.communities]
        small = [i for i, c in enumerate(self.communities) if len(c) < MIN_COMMUNITY_SIZE]
        if small:
            raise ValueError(f"communities {small[:5]} have fewer than {MIN_COMMUNITY_SIZE} members")
        if not self.index:
            for i, c in enumerate(self.communities):
                for v in c:
                    self.index.setdefault(v, []).append(i)

    def __len__(self):
        return len(self.communities)

    def write(self, fh, g: Graph) -> None:
        """One community per line in the graph's external ids."""
        for c in self.communities:
            fh.write(" ".join(str(int(g.external_ids[v])) for v in sorted(c)) + "\n")


def load_ground_truth(source, g: Graph) -> GroundTruth:
    """Read a SNAP-style community file (one community per line).

    Ids missing from ``g`` are skipped and counted; communities left with
    fewer than three members are dropped.
    """
    communities = []
    skipped = 0
    for lineno, line in enumerate(_read_lines(source), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        members = set()
        for tok in line.split():
            try:
                ext = int(tok)
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer vertex id {tok!r}") from None
            try:
                members.add(g.dense_id(ext))
            except KeyError:
                skipped += 1
        if len(members) >= MIN_COMMUNITY_SIZE:
            communities.append(members)
    if skipped:
        logger.warning("skipped %d ground-truth ids absent from the graph", skipped)
    return GroundTruth(communities, skipped_ids=skipped)


def f1_score(found, truth) -> tuple[float, float, float]:
    """``(precision, recall, f1)`` of a found set against a true set."""
    found, truth = set(found), set(truth)
    if not found or not truth:
        raise ValueError("found and truth sets must be nonempty")
    hit = len(found & truth)
    if hit == 0:
        return 0.0, 0.0, 0.0
    precision = hit / len(found)
    recall = hit / len(truth)
    return precision, recall, 2 * precision * recall / (precision + recall)


def select_queries(gt: GroundTruth, k: int, seed: int = 0) -> list[tuple[int, int]]:
    """Pick ``k`` distinct communities, then one member of each, uniformly."""
    if k > len(gt):
        raise ValueError(f"asked for {k} queries but only {len(gt)} communities exist")
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(gt), size=k, replace=False)
    out = []
    for ci in picks.tolist():
        members = sorted(gt.communities[ci])
        out.append((members[int(rng.integers(len(members)))], ci))
    return out


def _sample_pairs(rng, n_pairs: int, p: float) -> np.ndarray:
    if p <= 0.0 or n_pairs == 0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(n_pairs, dtype=np.int64)
    k = int(rng.binomial(n_pairs, p))
    return np.sort(rng.choice(n_pairs, size=k, replace=False)).astype(np.int64)


def generate_planted_partition(blocks: int, block_size: int, p_in: float, p_out: float,
                               seed: int = 0) -> tuple[Graph, GroundTruth]:
    """Random graph with ``blocks`` equal blocks of ``block_size`` vertices.

    Each pair inside a block is joined with probability ``p_in``, each pair
    across blocks with ``p_out``.  The blocks are the ground truth.
    """
    if blocks < 1:
        raise ValueError("need at least one block")
    if block_size < MIN_COMMUNITY_SIZE:
        raise ValueError(f"block_size must be >= {MIN_COMMUNITY_SIZE}")
    for name, p in (("p_in", p_in), ("p_out", p_out)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    s = block_size
    iu, ju = np.triu_indices(s, 1)
    parts = []
    for a in range(blocks):
        t = _sample_pairs(rng, len(iu), p_in)
        parts.append(np.column_stack([iu[t] + a * s, ju[t] + a * s]))
        for b in range(a + 1, blocks):
            t = _sample_pairs(rng, s * s, p_out)
            parts.append(np.column_stack([t // s + a * s, t % s + b * s]))
    edges = np.concatenate(parts)
    if len(edges) == 0:
        raise GraphFormatError("generated graph has no edges")
    n = blocks * s
    g = Graph.from_edges(edges, n=n)
    truth = GroundTruth([range(a * s, (a + 1) * s) for a in range(blocks)])
    if (g.degrees == 0).any() or not is_connected_subset(g, range(n)):
        logger.info("generated graph is disconnected")
    return g, truth


@dataclass
class EvalReport:
    query: int
    algorithm: str
    community: list
    conductance: float | None
    quality: float | None
    size: int
    runtime_ms: float
    precision: float | None = None
    recall: float | None = None
    f1: float | None = None
    community_index: int | None = None
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate_query(g: Graph, gt: GroundTruth | None, estimator, query: int,
                   community_index: int | None = None) -> EvalReport:
    """Run one search and score it.

    ``estimator`` is a :class:`~ccsearch.estimators.PPRCS` or
    :class:`~ccsearch.estimators.SCCS`; it is fitted on ``g`` unless it
    already is.  F1 is measured against ``community_index`` (default: the
    first ground-truth community holding the query).  Vertices in the report
    are external ids.  ``conductance`` is ``None`` when the community spans
    the whole graph volume.
    """
    if getattr(estimator, "graph_", None) is not g:
        estimator.fit(g)
    start = time.perf_counter()
    try:
        c = estimator.search(query)
    except Exception as exc:
        raise RuntimeError(f"{estimator.algorithm} failed on query {query}: {exc}") from exc
    runtime_ms = (time.perf_counter() - start) * 1000.0
    members = sorted(c.members)
    if query not in c.members or not is_connected_subset(g, members):
        raise AssertionError(f"{estimator.algorithm} returned an invalid community for query {query}")
    try:
        phi = conductance(g, members)
    except DegenerateCutError:
        phi = None
    report = EvalReport(
        query=int(g.external_ids[query]),
        algorithm=estimator.algorithm,
        community=[int(x) for x in g.external_ids[members]],
        conductance=phi,
        quality=c.d_in / c.volume if c.volume else None,
        size=len(members),
        runtime_ms=runtime_ms,
        params=estimator.fitted_params(),
    )
    if gt is not None:
        if community_index is None:
            holders = gt.index.get(query)
            if not holders:
                raise ValueError(f"query {query} is in no ground-truth community")
            community_index = holders[0]
        report.precision, report.recall, report.f1 = f1_score(members, gt.communities[community_index])
        report.community_index = community_index
    return report


def summarize(reports) -> dict:
    """Arithmetic means of the per-query numbers; ``None`` entries skipped."""
    out = {"summary": True, "queries": len(reports)}
    for key in ("runtime_ms", "f1", "precision", "recall", "conductance", "quality", "size"):
        vals = [getattr(r, key) for r in reports if getattr(r, key) is not None]
        out[f"mean_{key}"] = float(np.mean(vals)) if vals else None
    return out
