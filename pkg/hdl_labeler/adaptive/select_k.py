from dataclasses import dataclass
from io import StringIO

import pandas as pd

from ..index.knn import build_union_index
from ..store.embeddings import EmbeddingSet
from ..store.labels import LabelVector
from ..utils.enum import Metric
from ..utils.errors import CountMismatch, DomainError
from ..utils.logger import get_formatted_logger
from ..utils.workers import WorkerPool
from .beta import beta_factor
from .clusterability import mu_from_index

logger = get_formatted_logger("hdl_labeler.adaptive")

REPORT_HEADER = ["k", "mu", "beta", "product"]


@dataclass(frozen=True)
class KCandidate:
    k: int
    mu: float
    beta: float
    product: float


@dataclass(frozen=True)
class KSelectionReport:
    """Every candidate k with mu_k, the vote-success factor and their product."""

    candidates: tuple[KCandidate, ...]
    chosen_k: int
    p: float
    e: float
    seed: int
    k_upper_limit: int
    replace: bool = True

    @property
    def params(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "seed": self.seed,
            "k_upper_limit": self.k_upper_limit,
            "sample_with_replacement": self.replace,
        }

    @property
    def chosen(self) -> KCandidate:
        return next(c for c in self.candidates if c.k == self.chosen_k)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(c.k, c.mu, c.beta, c.product) for c in self.candidates],
            columns=REPORT_HEADER,
        )

    def to_csv(self) -> str:
        """``k,mu,beta,product`` rows followed by ``chosen,<k>``."""
        buffer = StringIO()
        self.to_frame().to_csv(buffer, index=False, float_format="%.10f", lineterminator="\n")
        buffer.write(f"chosen,{self.chosen_k}\n")
        return buffer.getvalue()


def select_k(
    labeled: EmbeddingSet,
    labels: LabelVector,
    p: float = 0.1,
    e: float = 0.15,
    k_upper_limit: int = 20,
    seed: int = 0,
    metric: Metric | str = Metric.Cosine,
    replace: bool = True,
    pool: WorkerPool | None = None,
    chunk_size: int = 256,
) -> KSelectionReport:
    """Pick k in [1, k_upper_limit) maximizing mu_k * I_{1-e}(k+1-k', k'+1).

    Each candidate samples its centers with seed + k. Ties go to the smallest k.
    """
    if len(labels) != labeled.count:
        raise CountMismatch("labels", labeled.count, len(labels))
    if isinstance(k_upper_limit, bool) or not isinstance(k_upper_limit, int) or k_upper_limit < 2:
        raise DomainError(f"k_upper_limit must be an integer >= 2, got {k_upper_limit!r}")
    if not 0.0 <= e <= 1.0:
        raise DomainError(f"label-error rate e must lie in [0, 1], got {e}")

    index = build_union_index(labeled, None, metric)
    candidates = []
    best: KCandidate | None = None
    for k in range(1, k_upper_limit):
        mu = mu_from_index(index, labels, k, p, seed + k, replace=replace, pool=pool, chunk_size=chunk_size)
        beta = beta_factor(k, e)
        candidate = KCandidate(k=k, mu=mu, beta=beta, product=mu * beta)
        candidates.append(candidate)
        if best is None or candidate.product > best.product:
            best = candidate
        logger.debug(f"k={k}: mu={mu:.4f} beta={beta:.6f} product={candidate.product:.6f}")

    logger.info(f"Selected k={best.k} (mu={best.mu:.4f}, beta={best.beta:.4f})")
    return KSelectionReport(
        candidates=tuple(candidates),
        chosen_k=best.k,
        p=p,
        e=e,
        seed=seed,
        k_upper_limit=k_upper_limit,
        replace=replace,
    )
