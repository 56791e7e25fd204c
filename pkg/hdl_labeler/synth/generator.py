"""Seeded Gaussian embedding sets with a stratified labeled split.

Clusters are isotropic by default. Setting ``axis_sigma`` stretches every
cluster along the last axis, which the one-hot means leave free, so each
class becomes a long thin rod parallel to the others.

All randomness comes from one ``numpy.random.PCG64`` stream seeded with
``SynthSpec.seed``. Draw order: per class (in class order) the Gaussian
block, then the within-class split permutation; finally one permutation of
the labeled rows and one of the unlabeled rows.
"""
import math
from dataclasses import dataclass

import numpy as np
from pydantic import ValidationError

from ..store.embeddings import EmbeddingSet
from ..store.labels import LabelVector
from ..utils.enum import ImbalanceType
from ..utils.errors import InvalidSpec
from ..utils.logger import get_formatted_logger
from ..utils.validators import SynthSpec

logger = get_formatted_logger("hdl_labeler.synth")


def long_tailed_counts(
    n_max: int,
    num_classes: int,
    imbalance_factor: float = 1.0,
    imbalance_type: ImbalanceType | str = ImbalanceType.Exp,
) -> list[int]:
    """Per-class counts from the head class n_max down to roughly n_max / IF."""
    imbalance_type = ImbalanceType(imbalance_type)
    if n_max < 1 or num_classes < 2:
        raise InvalidSpec(f"need n_max >= 1 and at least 2 classes, got n_max={n_max}, C={num_classes}")
    if imbalance_factor < 1:
        raise InvalidSpec(f"imbalance factor must be >= 1, got {imbalance_factor}")

    gamma = 1.0 / imbalance_factor
    if imbalance_type is ImbalanceType.Exp:
        counts = [n_max * gamma ** (c / (num_classes - 1)) for c in range(num_classes)]
    elif imbalance_type is ImbalanceType.Step:
        head = num_classes // 2
        counts = [n_max if c < head else n_max * gamma for c in range(num_classes)]
    else:
        counts = [n_max] * num_classes
    return [max(1, math.floor(round(n, 9))) for n in counts]


def make_spec(**fields) -> SynthSpec:
    """Build a SynthSpec, reporting validation problems as InvalidSpec."""
    try:
        return SynthSpec(**fields)
    except ValidationError as e:
        raise InvalidSpec(str(e)) from e


@dataclass(frozen=True)
class SynthDataset:
    spec: SynthSpec
    labeled: EmbeddingSet
    labels: LabelVector
    unlabeled: EmbeddingSet
    truth: LabelVector


def labeled_count(count: int, fraction: float) -> int:
    return math.ceil(round(count * fraction, 9))


def cluster_means(spec: SynthSpec) -> np.ndarray:
    if spec.means is not None:
        return np.array(spec.means, dtype=np.float64)
    means = np.zeros((spec.num_classes, spec.dim), dtype=np.float64)
    means[np.arange(spec.num_classes), np.arange(spec.num_classes)] = spec.radius
    return means


def cluster_scales(spec: SynthSpec) -> np.ndarray:
    """Per-axis standard deviation shared by every cluster."""
    scales = np.full(spec.dim, spec.sigma, dtype=np.float64)
    if spec.axis_sigma is not None:
        scales[-1] = spec.axis_sigma
    return scales


def generate(spec: SynthSpec) -> SynthDataset:
    """Draw the clusters of ``spec`` and split each class by its labeled fraction."""
    if not isinstance(spec, SynthSpec):
        raise InvalidSpec(f"expected a SynthSpec, got {type(spec).__name__}")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    means = cluster_means(spec)
    scales = cluster_scales(spec)

    labeled_parts, labeled_ys, unlabeled_parts, unlabeled_ys = [], [], [], []
    for c, count in enumerate(spec.class_counts):
        points = means[c] + rng.standard_normal((count, spec.dim)) * scales
        split = rng.permutation(count)
        n_labeled = labeled_count(count, spec.labeled_fraction)
        labeled_parts.append(points[split[:n_labeled]])
        unlabeled_parts.append(points[split[n_labeled:]])
        labeled_ys.append(np.full(n_labeled, c, dtype=np.int64))
        unlabeled_ys.append(np.full(count - n_labeled, c, dtype=np.int64))

    labeled = np.concatenate(labeled_parts, axis=0)
    unlabeled = np.concatenate(unlabeled_parts, axis=0)
    ys = np.concatenate(labeled_ys)
    truth = np.concatenate(unlabeled_ys)
    labeled_order = rng.permutation(labeled.shape[0])
    unlabeled_order = rng.permutation(unlabeled.shape[0])

    dataset = SynthDataset(
        spec=spec,
        labeled=EmbeddingSet.from_array(labeled[labeled_order], source="<synthetic labeled>"),
        labels=LabelVector.from_sequence(ys[labeled_order], num_classes=spec.num_classes),
        unlabeled=EmbeddingSet.from_array(unlabeled[unlabeled_order], source="<synthetic unlabeled>"),
        truth=LabelVector.from_sequence(truth[unlabeled_order], num_classes=spec.num_classes),
    )
    logger.debug(
        f"Generated {dataset.labeled.count} labeled + {dataset.unlabeled.count} unlabeled points "
        f"(C={spec.num_classes}, d={spec.dim}, IF={spec.imbalance_factor:g}, seed={spec.seed})"
    )
    return dataset
