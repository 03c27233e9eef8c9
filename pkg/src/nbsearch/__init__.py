"""Near-Optimal Bidirectional Search with baselines and expansion analysis."""

from .baselines import MMParams, astar_search, bs_star_search, mm_search
from .core import (
    BACKWARD,
    FORWARD,
    Direction,
    OctileCost,
    SearchLimits,
    SearchNode,
    SearchResult,
    SearchTrace,
    StateSpace,
    check_consistency,
    dijkstra,
    reconstruct_path,
)
from .mx import build_gmx, grade_trace, min_vertex_cover
from .nbs import nbs_search
from .openlist import DualOpenList, lb

__all__ = [
    "BACKWARD",
    "FORWARD",
    "Direction",
    "DualOpenList",
    "MMParams",
    "OctileCost",
    "SearchLimits",
    "SearchNode",
    "SearchResult",
    "SearchTrace",
    "StateSpace",
    "astar_search",
    "bs_star_search",
    "build_gmx",
    "check_consistency",
    "dijkstra",
    "grade_trace",
    "lb",
    "mm_search",
    "min_vertex_cover",
    "nbs_search",
    "reconstruct_path",
]
