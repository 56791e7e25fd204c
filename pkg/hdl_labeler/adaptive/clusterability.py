"""Sampling estimate of mu_k, the probability that a labeled point and its
k nearest labeled neighbors all share one label."""
import math
from typing import Iterable, Sequence

import numpy as np

from ..index.knn import UnionIndex, build_union_index
from ..store.embeddings import EmbeddingSet
from ..store.labels import LabelVector
from ..utils.enum import Metric
from ..utils.errors import CountMismatch, DomainError, EmptySample, InvalidK, KTooLarge
from ..utils.logger import get_formatted_logger
from ..utils.workers import WorkerPool

logger = get_formatted_logger("hdl_labeler.adaptive")


def sample_size(count: int, p: float) -> int:
    """floor(count * p) after rounding away float noise in the product."""
    if not 0.0 < p <= 1.0:
        raise DomainError(f"sample fraction p must lie in (0, 1], got {p}")
    return math.floor(round(count * p, 9))


def sample_centers(count: int, p: float, seed: int, replace: bool = True) -> np.ndarray:
    """Center indices drawn from PCG64 seeded with ``seed``."""
    m = sample_size(count, p)
    if m < 1:
        raise EmptySample(count, p)
    rng = np.random.default_rng(seed)
    if replace:
        return rng.integers(0, count, size=m, dtype=np.int64)
    return rng.choice(count, size=m, replace=False).astype(np.int64)


def mu_from_index(
    index: UnionIndex,
    labels: LabelVector,
    k: int,
    p: float,
    seed: int,
    replace: bool = True,
    pool: WorkerPool | None = None,
    chunk_size: int = 256,
) -> float:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidK(k)
    if k > index.n_labeled - 1:
        raise KTooLarge(k, index.n_labeled - 1)
    centers = sample_centers(index.n_labeled, p, seed, replace=replace)
    neighbor_ids, _ = index.neighbors(centers, k, labeled_only=True, pool=pool, chunk_size=chunk_size)
    values = labels.labels
    agree = (values[neighbor_ids] == values[centers][:, None]).all(axis=1)
    return float(np.count_nonzero(agree)) / centers.size


def estimate_mu(
    labeled: EmbeddingSet,
    labels: LabelVector,
    k: int,
    p: float,
    seed: int,
    metric: Metric | str = Metric.Cosine,
    replace: bool = True,
    pool: WorkerPool | None = None,
    chunk_size: int = 256,
) -> float:
    """Fraction of sampled centers whose k nearest labeled neighbors (self excluded)
    all carry the center's label."""
    if len(labels) != labeled.count:
        raise CountMismatch("labels", labeled.count, len(labels))
    index = build_union_index(labeled, None, metric)
    return mu_from_index(index, labels, k, p, seed, replace=replace, pool=pool, chunk_size=chunk_size)


def clusterability_profile(
    labeled: EmbeddingSet,
    labels: LabelVector,
    k_values: Iterable[int],
    p: float,
    seed: int,
    metric: Metric | str = Metric.Cosine,
    replace: bool = True,
    pool: WorkerPool | None = None,
    chunk_size: int = 256,
) -> list[tuple[int, float]]:
    """(k, mu_k) for every k, each sampled with seed + k."""
    if len(labels) != labeled.count:
        raise CountMismatch("labels", labeled.count, len(labels))
    index = build_union_index(labeled, None, metric)
    profile = []
    for k in k_values:
        mu = mu_from_index(index, labels, int(k), p, seed + int(k), replace=replace, pool=pool, chunk_size=chunk_size)
        logger.debug(f"mu_{k} = {mu:.4f}")
        profile.append((int(k), mu))
    return profile


def mu_statistics(profiles: Sequence[Sequence[tuple[int, float]]]) -> list[tuple[int, float, float]]:
    """Per-k mean and (population) standard deviation of mu_k across profiles."""
    if not profiles:
        raise ValueError("mu_statistics needs at least one profile")
    ks = [k for k, _ in profiles[0]]
    for profile in profiles[1:]:
        if [k for k, _ in profile] != ks:
            raise ValueError("every profile must cover the same k values in the same order")
    table = np.array([[mu for _, mu in profile] for profile in profiles], dtype=np.float64)
    means = table.mean(axis=0)
    stds = table.std(axis=0)
    return [(k, float(m), float(s)) for k, m, s in zip(ks, means, stds)]
