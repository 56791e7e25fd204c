from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from ..utils.errors import (
    CountMismatch,
    IoFailure,
    LabelOutOfRange,
    MalformedFile,
    NegativeLabel,
    NonIntegerLabel,
)

LABELS_HEADER = ["index", "label"]


@dataclass(frozen=True, eq=False)
class LabelVector:
    """0-based class ids paired row-by-row with an EmbeddingSet."""

    labels: np.ndarray
    num_classes: int

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    @classmethod
    def from_sequence(cls, labels: Sequence[int], num_classes: int | None = None) -> "LabelVector":
        array = np.array(labels, dtype=np.int64).reshape(-1)
        if array.size and array.min() < 0:
            raise LabelOutOfRange(f"labels must be non-negative, found {int(array.min())}")
        inferred = int(array.max()) + 1 if array.size else 0
        if num_classes is None:
            num_classes = max(2, inferred)
        elif num_classes < 2:
            raise LabelOutOfRange(f"num_classes must be at least 2, got {num_classes}")
        elif inferred > num_classes:
            raise LabelOutOfRange(f"label {inferred - 1} is outside [0, {num_classes})")
        array.setflags(write=False)
        return cls(labels=array, num_classes=int(num_classes))


def _read_csv(path: Path, header: list[str]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise MalformedFile(path, "empty file")
    except OSError as e:
        raise IoFailure(path, f"cannot read CSV ({e.strerror or e})") from e
    if list(frame.columns) != header:
        raise MalformedFile(path, f"header must be exactly {','.join(header)!r}")
    return frame


def _parse_row_index(frame: pd.DataFrame, path: Path) -> None:
    expected = [str(i) for i in range(len(frame))]
    actual = frame["index"].str.strip().tolist()
    if actual != expected:
        row = next(i for i, (a, b) in enumerate(zip(actual, expected)) if a != b)
        raise MalformedFile(path, f"row {row} has index {actual[row]!r}, expected {row}")


def _parse_int_column(frame: pd.DataFrame, column: str, path: Path) -> np.ndarray:
    values = frame[column].str.strip()
    is_int = values.str.fullmatch(r"[+-]?\d+")
    if not is_int.all():
        row = int(np.argmin(is_int.to_numpy()))
        raise NonIntegerLabel(path, row, values.iloc[row])
    parsed = values.astype(np.int64).to_numpy()
    negative = parsed < 0
    if negative.any():
        row = int(np.argmax(negative))
        raise NegativeLabel(path, row, int(parsed[row]))
    return parsed


def load_labels(path: str | Path, expected_count: int, num_classes: int | None = None) -> LabelVector:
    """Read a labels CSV; C defaults to max(2, 1 + max label)."""
    path = Path(path)
    frame = _read_csv(path, LABELS_HEADER)
    if len(frame) != expected_count:
        raise CountMismatch(str(path), expected_count, len(frame))
    _parse_row_index(frame, path)
    labels = _parse_int_column(frame, "label", path)
    try:
        return LabelVector.from_sequence(labels, num_classes=num_classes)
    except LabelOutOfRange as e:
        raise LabelOutOfRange(f"{path}: {e}") from e


def write_labels(labels: LabelVector | Sequence[int], path: str | Path) -> None:
    values = labels.labels if isinstance(labels, LabelVector) else np.asarray(labels, dtype=np.int64)
    frame = pd.DataFrame({"index": np.arange(len(values), dtype=np.int64), "label": values})
    try:
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as e:
        raise IoFailure(path, f"cannot write labels ({e.strerror or e})") from e
