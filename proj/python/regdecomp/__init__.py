"""Regular decomposition of sparse graphs from distance matrices."""

import json

from . import _core
from ._core import (
    UNREACHABLE,
    Error,
    Graph,
    RDModel,
    __version__,
    betweenness_references,
    classify,
    distance_matrix,
    estimate_means,
    expand_partition,
    giant_component,
    local_update,
    misclassification_rate,
    node_costs,
    parse_edge_list,
    planted_partition,
    preferential_attachment,
    read_edge_list,
    regular_decomposition,
    sbm,
    select_k,
    sssp_distances,
    total_cost,
    uniform_references,
)
from ._core import theory


def theory_report(a, b, n):
    """All planted-partition predictions for (a, b, n) as a dict."""
    return json.loads(theory.report_json(a, b, n))


__all__ = [
    "UNREACHABLE",
    "Error",
    "Graph",
    "RDModel",
    "__version__",
    "betweenness_references",
    "classify",
    "distance_matrix",
    "estimate_means",
    "expand_partition",
    "giant_component",
    "local_update",
    "misclassification_rate",
    "node_costs",
    "parse_edge_list",
    "planted_partition",
    "preferential_attachment",
    "read_edge_list",
    "regular_decomposition",
    "sbm",
    "select_k",
    "sssp_distances",
    "theory",
    "theory_report",
    "total_cost",
    "uniform_references",
]
