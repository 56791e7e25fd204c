from dataclasses import asdict, dataclass

import numpy as np

from ..store.labels import LabelVector
from ..store.output import LabeledOutput
from ..utils.errors import CountMismatch


@dataclass(frozen=True)
class EvalResult:
    method: str
    accuracy: float
    # None for classes with no ground-truth point
    per_class: list[float | None]
    confusion: list[list[int]]

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate(output: LabeledOutput, truth: LabelVector, method: str | None = None) -> EvalResult:
    """Compare assigned labels with ground truth; confusion rows are true classes."""
    if len(output) != len(truth):
        raise CountMismatch("output", len(truth), len(output))
    predicted = output.labels_by_index()
    actual = truth.labels
    num_classes = truth.num_classes
    if predicted.size:
        num_classes = max(num_classes, int(predicted.max()) + 1)

    confusion = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(confusion, (actual, predicted), 1)
    totals = confusion.sum(axis=1)
    per_class = [float(confusion[c, c] / totals[c]) if totals[c] else None for c in range(num_classes)]
    # an empty unlabeled set is vacuously fully correct
    accuracy = float(np.trace(confusion) / actual.size) if actual.size else 1.0
    return EvalResult(
        method=method if method is not None else output.method,
        accuracy=accuracy,
        per_class=per_class,
        confusion=confusion.tolist(),
    )
