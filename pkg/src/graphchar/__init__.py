"""Homophily measures, label informativeness and their property checks for labeled graphs."""

__version__ = "0.1.0"

from .graph import (
    ClassAdjacencyMatrix,
    ClassDistribution,
    DegreeProfile,
    LabeledGraph,
    build_class_adjacency,
    degree_weighted_distribution,
    joint_edge_distribution,
    label_distribution,
    matrix_instance,
)
from .homophily import (
    MEASURE_NAMES,
    HomophilyProfile,
    MeasureUndefinedError,
    adjusted_homophily,
    balanced_adjusted_homophily,
    balanced_homophily,
    class_homophily,
    edge_homophily,
    modularity,
    node_homophily,
    profile,
)
from .informativeness import LIProfile, li_edge, li_node, li_profile
from .io import MeasureReport, characterize, load_dataset, load_edge_list, write_edge_list
from .oracle import oracle_values

__all__ = [
    "ClassAdjacencyMatrix",
    "ClassDistribution",
    "DegreeProfile",
    "HomophilyProfile",
    "LIProfile",
    "LabeledGraph",
    "MEASURE_NAMES",
    "MeasureReport",
    "MeasureUndefinedError",
    "adjusted_homophily",
    "balanced_adjusted_homophily",
    "balanced_homophily",
    "build_class_adjacency",
    "characterize",
    "class_homophily",
    "degree_weighted_distribution",
    "edge_homophily",
    "joint_edge_distribution",
    "label_distribution",
    "li_edge",
    "li_node",
    "li_profile",
    "load_dataset",
    "load_edge_list",
    "matrix_instance",
    "modularity",
    "node_homophily",
    "oracle_values",
    "profile",
    "write_edge_list",
]
