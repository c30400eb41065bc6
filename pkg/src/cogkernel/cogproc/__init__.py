from .cluster import ClusterModel, agglomerative_cluster, clustering_problem, within_cost
from .ecan import EcanParams, attentional_focus, ecan_dds, ecan_spread, spread_matrix
from .mining import (
    MinedPattern,
    Template,
    canonical_code,
    count_matches,
    find_matches,
    mine_patterns,
    pattern_codes,
    template_from_code,
    template_intensity,
)

__all__ = [
    "ClusterModel",
    "EcanParams",
    "MinedPattern",
    "Template",
    "agglomerative_cluster",
    "attentional_focus",
    "canonical_code",
    "clustering_problem",
    "count_matches",
    "ecan_dds",
    "ecan_spread",
    "find_matches",
    "mine_patterns",
    "pattern_codes",
    "spread_matrix",
    "template_from_code",
    "template_intensity",
    "within_cost",
]
