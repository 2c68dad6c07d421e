"""Query-driven search for connected, low-conductance communities."""

from .estimators import PPRCS, SCCS
from .evaluation import (
    EvalReport,
    GroundTruth,
    evaluate_query,
    f1_score,
    generate_planted_partition,
    load_ground_truth,
    select_queries,
)
from .graph import UNREACHABLE, Graph, GraphFormatError, bfs_depths, induced_subgraph, is_connected_subset, load_edge_list
from .metrics import Community, DegenerateCutError, conductance, quality_score, subgraph_conductance
from .oracle import brute_force_ccs
from .ppr import PprParams, forward_push, pprcs_search
from .sampling import SamplingParams, sample_subgraph
from .sccs import SccsParams, sccs_search

__version__ = "0.1.0"
