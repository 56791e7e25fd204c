"""Desk-scale HDL vs kNN-DV experiments on synthetic embeddings."""
from dataclasses import asdict, dataclass

import numpy as np

from ..index.knn import build_union_index
from ..labelers.hdl import run_hdl
from ..labelers.knn_dv import run_knn_dv
from ..utils.enum import Metric
from ..utils.logger import get_formatted_logger
from ..utils.validators import SynthSpec
from ..utils.workers import WorkerPool
from .evaluation import evaluate
from .generator import SynthDataset, generate

logger = get_formatted_logger("hdl_labeler.synth")


@dataclass(frozen=True)
class ClusterabilityComparison:
    """Share of unlabeled points whose k neighbors all carry the point's true label."""

    k: int
    labeled_only: float
    union: float


def compare_clusterability(
    dataset: SynthDataset, k: int, metric: Metric | str = Metric.Cosine
) -> ClusterabilityComparison:
    index = build_union_index(dataset.labeled, dataset.unlabeled, metric)
    queries = [index.global_id(m) for m in range(dataset.unlabeled.count)]
    if not queries:
        return ClusterabilityComparison(k=k, labeled_only=1.0, union=1.0)
    all_labels = np.concatenate([dataset.labels.labels, dataset.truth.labels])
    truth = dataset.truth.labels[:, None]

    labeled_ids, _ = index.neighbors(queries, k, labeled_only=True)
    union_ids, _ = index.neighbors(queries, k)
    return ClusterabilityComparison(
        k=k,
        labeled_only=float((all_labels[labeled_ids] == truth).all(axis=1).mean()),
        union=float((all_labels[union_ids] == truth).all(axis=1).mean()),
    )


@dataclass
class TrialSummary:
    k: int
    seeds: list[int]
    hdl_accuracy: list[float]
    knn_dv_accuracy: list[float]
    hdl_per_class: list[list[float | None]]
    knn_dv_per_class: list[list[float | None]]

    @property
    def mean_gain(self) -> float:
        return float(np.mean(self.hdl_accuracy) - np.mean(self.knn_dv_accuracy))

    @property
    def hdl_win_rate(self) -> float:
        """Share of trials where HDL is at least as accurate as kNN-DV."""
        wins = sum(1 for h, b in zip(self.hdl_accuracy, self.knn_dv_accuracy) if h >= b)
        return wins / len(self.seeds)

    def to_dict(self) -> dict:
        data = asdict(self)
        data.update(
            hdl_mean=float(np.mean(self.hdl_accuracy)),
            knn_dv_mean=float(np.mean(self.knn_dv_accuracy)),
            mean_gain=self.mean_gain,
            hdl_win_rate=self.hdl_win_rate,
        )
        return data


def run_trials(
    spec: SynthSpec,
    k: int,
    trials: int,
    metric: Metric | str = Metric.Cosine,
    pool: WorkerPool | None = None,
) -> TrialSummary:
    """Label ``trials`` synthetic sets (seeds spec.seed, spec.seed + 1, ...) with both methods."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    summary = TrialSummary(k=k, seeds=[], hdl_accuracy=[], knn_dv_accuracy=[], hdl_per_class=[], knn_dv_per_class=[])
    for t in range(trials):
        seed = spec.seed + t
        dataset = generate(spec.model_copy(update={"seed": seed}))
        hdl = evaluate(run_hdl(dataset.labeled, dataset.labels, dataset.unlabeled, k, metric, pool=pool), dataset.truth)
        knn = evaluate(
            run_knn_dv(dataset.labeled, dataset.labels, dataset.unlabeled, k, metric, pool=pool), dataset.truth
        )
        summary.seeds.append(seed)
        summary.hdl_accuracy.append(hdl.accuracy)
        summary.knn_dv_accuracy.append(knn.accuracy)
        summary.hdl_per_class.append(hdl.per_class)
        summary.knn_dv_per_class.append(knn.per_class)
        logger.debug(f"trial seed={seed}: hdl={hdl.accuracy:.4f} knn-dv={knn.accuracy:.4f}")

    logger.info(f"{trials} trials: mean HDL - kNN-DV gain {summary.mean_gain:+.4f}")
    return summary
