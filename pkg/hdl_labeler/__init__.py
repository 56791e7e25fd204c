from .adaptive import KSelectionReport, estimate_mu, reg_inc_beta, select_k
from .config import Config
from .index import UnionIndex, build_union_index
from .labelers import LabelStatus, LevelPlan, run_hdl, run_knn_dv, second_level_order, select_first_level, vote
from .store import (
    EmbeddingSet,
    LabeledOutput,
    LabeledRecord,
    LabelVector,
    load_embeddings,
    load_labels,
    read_output,
    write_embeddings,
    write_labels,
    write_output,
)
from .synth import EvalResult, evaluate, generate, make_spec
from .utils.enum import Method, Metric

__all__ = [
    "Config",
    "EmbeddingSet",
    "EvalResult",
    "KSelectionReport",
    "LabelStatus",
    "LabelVector",
    "LabeledOutput",
    "LabeledRecord",
    "LevelPlan",
    "Method",
    "Metric",
    "UnionIndex",
    "build_union_index",
    "estimate_mu",
    "evaluate",
    "generate",
    "load_embeddings",
    "load_labels",
    "make_spec",
    "read_output",
    "reg_inc_beta",
    "run_hdl",
    "run_knn_dv",
    "second_level_order",
    "select_first_level",
    "select_k",
    "vote",
    "write_embeddings",
    "write_labels",
    "write_output",
]
