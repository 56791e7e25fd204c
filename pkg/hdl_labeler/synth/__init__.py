from .evaluation import EvalResult, evaluate
from .experiments import ClusterabilityComparison, TrialSummary, compare_clusterability, run_trials
from .generator import SynthDataset, generate, long_tailed_counts, make_spec

__all__ = [
    "ClusterabilityComparison",
    "EvalResult",
    "SynthDataset",
    "TrialSummary",
    "compare_clusterability",
    "evaluate",
    "generate",
    "long_tailed_counts",
    "make_spec",
    "run_trials",
]
