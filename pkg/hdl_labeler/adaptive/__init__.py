from .beta import beta_factor, reg_inc_beta, tolerated_errors
from .clusterability import clusterability_profile, estimate_mu, mu_statistics, sample_centers
from .select_k import KCandidate, KSelectionReport, select_k

__all__ = [
    "KCandidate",
    "KSelectionReport",
    "beta_factor",
    "clusterability_profile",
    "estimate_mu",
    "mu_statistics",
    "reg_inc_beta",
    "sample_centers",
    "select_k",
    "tolerated_errors",
]
