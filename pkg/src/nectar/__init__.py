"""Overlapping community detection by node-centric local search.

Extended modularity is used on graphs with few closed triangles and
the triangle-based WOCC objective otherwise.
"""

from .cover import Cover, read_cover, write_cover
from .engine import (
    AlgorithmConfig,
    RunReport,
    SearchMode,
    beta_sweep,
    default_betas,
    initialize_cover,
    run,
    run_community_centric,
    sweep_reports,
)
from .graph import EdgeListError, Graph, load_edge_list
from .metrics import EvaluationReport, avg_f1, evaluate, match_ground_truth, nmi, omega
from .objectives import (
    ObjectiveKind,
    delta_q_ext,
    delta_wocc,
    q_ext,
    select_objective,
    wcc_community,
    wcc_node,
    wocc_cover,
)
from .planted import PlantedPartitionSpec, generate_planted

__all__ = [
    "AlgorithmConfig", "Cover", "EdgeListError", "EvaluationReport", "Graph", "ObjectiveKind",
    "PlantedPartitionSpec", "RunReport", "SearchMode", "avg_f1", "beta_sweep", "default_betas",
    "delta_q_ext", "delta_wocc", "evaluate", "generate_planted", "initialize_cover",
    "load_edge_list", "match_ground_truth", "nmi", "omega", "q_ext", "read_cover", "run",
    "run_community_centric", "select_objective", "sweep_reports", "wcc_community", "wcc_node",
    "wocc_cover", "write_cover",
]
