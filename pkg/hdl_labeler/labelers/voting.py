from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..utils.errors import EmptyVoterSet, LabelOutOfRange


@dataclass(frozen=True)
class VoteTally:
    counts: tuple[int, ...]
    winner: int
    margin: float
    voters: int
    tied: bool


def vote(neighbor_labels: Sequence[int], num_classes: int) -> VoteTally:
    """Unweighted majority vote; ties go to the smallest class id."""
    labels = np.asarray(neighbor_labels, dtype=np.int64).reshape(-1)
    if labels.size == 0:
        raise EmptyVoterSet()
    if labels.min() < 0 or labels.max() >= num_classes:
        raise LabelOutOfRange(f"voter labels must lie in [0, {num_classes})")

    counts = np.bincount(labels, minlength=num_classes)
    # argmax returns the first maximal entry
    winner = int(np.argmax(counts))
    top = int(counts[winner])
    return VoteTally(
        counts=tuple(int(c) for c in counts),
        winner=winner,
        margin=top / int(labels.size),
        voters=int(labels.size),
        tied=bool(np.count_nonzero(counts == top) > 1),
    )
