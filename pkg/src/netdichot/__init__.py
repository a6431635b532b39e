"""Binary versions of valued networks and what they lose."""

__version__ = "0.1.0"

from .graphs import (
    DirectedBinaryGraph,
    GraphValidationError,
    UndirectedBinaryGraph,
    ValuedGraph,
    build_valued_graph,
    graph_stats,
    symmetrize_or,
)
from .netgen import Family, GenConfig, Geometry, LatentState, parameter_grid, sample_graph
from .dichotomize import Method, censor_then_symmetrize, censor_topk, ladder, threshold_graph
from .compare import Statistic, rank_discrepancy, rank_scores, sweep, value_discrepancy
from .contagion import LmConfig, mse_experiment, ols_fit, simulate_two_step

__all__ = [
    "DirectedBinaryGraph", "GraphValidationError", "UndirectedBinaryGraph", "ValuedGraph",
    "build_valued_graph", "graph_stats", "symmetrize_or",
    "Family", "GenConfig", "Geometry", "LatentState", "parameter_grid", "sample_graph",
    "Method", "censor_then_symmetrize", "censor_topk", "ladder", "threshold_graph",
    "Statistic", "rank_discrepancy", "rank_scores", "sweep", "value_discrepancy",
    "LmConfig", "mse_experiment", "ols_fit", "simulate_two_step",
]
