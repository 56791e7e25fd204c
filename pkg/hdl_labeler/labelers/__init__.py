from .hdl import (
    LabelStatus,
    LevelPlan,
    NeighborGraph,
    labeled_neighbor_counts,
    run_hdl,
    score_matrix,
    second_level_order,
    select_first_level,
)
from .knn_dv import run_knn_dv
from .voting import VoteTally, vote

__all__ = [
    "LabelStatus",
    "LevelPlan",
    "NeighborGraph",
    "VoteTally",
    "labeled_neighbor_counts",
    "run_hdl",
    "run_knn_dv",
    "score_matrix",
    "second_level_order",
    "select_first_level",
    "vote",
]
