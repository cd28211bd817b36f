"""Network-position measures for interaction networks.

Builds member interaction graphs from forum-post logs, computes global
position measures (closeness, betweenness, coreness) and local
graphlet-orbit measures (orbits 0-14 plus two composite features), and
compares their power to predict per-member contribution with a
three-regression log-log design.
"""

__version__ = "0.1.0"

from .graph import Graph, build_graph, connected_components
from .ingest import (CodeDetection, ForumPost, InteractionPolicy, NodeAttributes,
                     build_interaction_network, compute_attributes, detect_code,
                     parse_posts)
from .centrality import (GlobalFeatures, betweenness, closeness_estimated,
                         closeness_exact, coreness, global_features)
from .orbits import (count_orbits, local_centrality, local_spanning, taxonomy)
from .oracles import brute_force_betweenness, brute_force_orbits, verify_coreness
from .regression import (ModelComparison, RankDeficiencyError, RegressionResult,
                         compare_three, dummy_code, log1_transform, nested_f_test,
                         ols_fit)
from .pipeline import (SyntheticSpec, assemble_features, generate_synthetic,
                       position_features, preferential_attachment_graph)

__all__ = [
    "Graph", "build_graph", "connected_components",
    "CodeDetection", "ForumPost", "InteractionPolicy", "NodeAttributes",
    "build_interaction_network", "compute_attributes", "detect_code", "parse_posts",
    "GlobalFeatures", "betweenness", "closeness_estimated", "closeness_exact",
    "coreness", "global_features",
    "count_orbits", "local_centrality", "local_spanning", "taxonomy",
    "brute_force_betweenness", "brute_force_orbits", "verify_coreness",
    "ModelComparison", "RankDeficiencyError", "RegressionResult", "compare_three",
    "dummy_code", "log1_transform", "nested_f_test", "ols_fit",
    "SyntheticSpec", "assemble_features", "generate_synthetic", "position_features",
    "preferential_attachment_graph",
]
