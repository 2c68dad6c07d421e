"""scikit-learn style front ends for the two community search algorithms.

``fit`` takes the graph (a :class:`~ccsearch.graph.Graph`, a sparse
adjacency matrix or an edge array); ``predict`` maps query vertices to
communities::

    >>> est = SCCS(l=50, h=500).fit(adjacency)
    >>> est.predict([0, 17])            # list of sorted member arrays
    >>> est.transform([0, 17])          # (2, n) sparse indicator matrix
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .graph import check_graph
from .metrics import Community
from .ppr import PprParams, pprcs_search
from .sampling import SamplingParams
from .sccs import SccsParams, sccs_search

__all__ = ["PPRCS", "SCCS", "check_queries"]


def check_queries(queries, n: int) -> np.ndarray:
    """Validate query vertices against a graph with ``n`` vertices."""
    q = np.atleast_1d(np.asarray(queries))
    if q.ndim != 1:
        raise ValueError(f"queries must be a scalar or 1-d sequence, got shape {q.shape}")
    if q.size and not np.issubdtype(q.dtype, np.integer):
        raise ValueError("query vertices must be integers")
    q = q.astype(np.int64)
    if q.size and (q.min() < 0 or q.max() >= n):
        raise ValueError(f"query vertex out of range [0, {n})")
    return q


class _CommunitySearch(ClusterMixin, BaseEstimator):
    algorithm = None

    def fit(self, X, y=None):
        self.graph_ = check_graph(X)
        self.n_vertices_ = self.graph_.n
        self._resolve_params()
        return self

    def search(self, q: int, **kwargs) -> Community:
        """Community of a single query vertex on the fitted graph."""
        check_is_fitted(self, "graph_")
        (q,) = check_queries(q, self.n_vertices_)
        return self._search(int(q), **kwargs)

    def predict(self, queries):
        """Sorted member arrays, one per query vertex."""
        check_is_fitted(self, "graph_")
        return [np.array(sorted(self._search(int(q)).members), dtype=np.int64)
                for q in check_queries(queries, self.n_vertices_)]

    def transform(self, queries):
        """Membership indicator matrix of shape ``(len(queries), n)``."""
        found = self.predict(queries)
        rows = np.repeat(np.arange(len(found)), [len(f) for f in found])
        cols = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
        data = np.ones(len(cols), dtype=np.int8)
        return sp.csr_matrix((data, (rows, cols)), shape=(len(found), self.n_vertices_))

    def fit_predict(self, X, y=None, queries=None):
        if queries is None:
            raise ValueError("fit_predict needs the query vertices")
        return self.fit(X).predict(queries)

    def fitted_params(self) -> dict:
        """Parameters as used for the fitted graph (``auto`` resolved)."""
        return self.get_params()


class PPRCS(_CommunitySearch):
    """Personalized-PageRank sweep restricted to connected prefixes.

    Parameters
    ----------
    alpha : float, default=0.15
        Teleport probability of the random walk.
    r_max : float or "auto", default="auto"
        Push threshold; ``"auto"`` means ``1 / n`` of the fitted graph.

    Attributes
    ----------
    graph_ : Graph
    r_max_ : float
        The threshold in effect.
    """

    algorithm = "pprcs"

    def __init__(self, alpha=0.15, r_max="auto"):
        self.alpha = alpha
        self.r_max = r_max

    def _resolve_params(self):
        if isinstance(self.r_max, str):
            if self.r_max != "auto":
                raise ValueError(f"r_max must be a positive float or 'auto', got {self.r_max!r}")
            self.r_max_ = 1.0 / self.n_vertices_
        else:
            self.r_max_ = float(self.r_max)
        self.params_ = PprParams(float(self.alpha), self.r_max_)

    def _search(self, q):
        return pprcs_search(self.graph_, q, self.params_)

    def fitted_params(self):
        return {"alpha": self.params_.alpha, "r_max": self.params_.r_max}


class SCCS(_CommunitySearch):
    """Clique-seeded expansion and pruning on a sampled neighborhood.

    Parameters
    ----------
    dp : int, default=3
        BFS depth that is always sampled.
    l, h : int, default=300, 5000
        Lower and upper bounds on the number of sampled vertices.
    count : int, default=2
        Largest batch tried in one expansion attempt.
    max_rounds : int, default=100
        Cap on expansion/verification alternations.
    """

    algorithm = "sccs"

    def __init__(self, dp=3, l=300, h=5000, count=2, max_rounds=100):  # noqa: E741
        self.dp = dp
        self.l = l
        self.h = h
        self.count = count
        self.max_rounds = max_rounds

    def _resolve_params(self):
        self.params_ = SccsParams(
            SamplingParams(int(self.dp), int(self.l), int(self.h)),
            int(self.count),
            int(self.max_rounds),
        )

    def _search(self, q, trajectory=None):
        return sccs_search(self.graph_, q, self.params_, trajectory)
