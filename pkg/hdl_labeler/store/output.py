from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from ..utils.errors import InvalidOutput, IoFailure, MalformedFile

OUTPUT_HEADER = ["index", "label", "level", "rank", "margin"]


@dataclass(frozen=True)
class LabeledRecord:
    index: int
    label: int
    level: int
    rank: int
    margin: float
    # Audit-only; not part of the CSV
    tied: bool = False
    fallback: bool = False


@dataclass
class LabeledOutput:
    """One record per unlabeled point, plus the level plans that produced them."""

    records: list[LabeledRecord]
    method: str = ""
    k: int | None = None
    levels: tuple[Any, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def level_count(self) -> int:
        return len({r.level for r in self.records})

    @property
    def fallback_count(self) -> int:
        return sum(1 for r in self.records if r.fallback)

    @property
    def tie_count(self) -> int:
        return sum(1 for r in self.records if r.tied)

    def sorted_records(self) -> list[LabeledRecord]:
        return sorted(self.records, key=lambda r: (r.level, r.rank))

    def labels_by_index(self) -> np.ndarray:
        """Assigned labels ordered by source index m."""
        labels = np.full(len(self.records), -1, dtype=np.int64)
        for record in self.records:
            labels[record.index] = record.label
        return labels

    def trace(self) -> list[tuple[int, int, int, int]]:
        """(index, level, rank, label) in labeling order."""
        return [(r.index, r.level, r.rank, r.label) for r in self.sorted_records()]

    def validate(self, expected_count: int | None = None) -> None:
        count = len(self.records)
        if expected_count is not None and count != expected_count:
            raise InvalidOutput(f"expected {expected_count} records, found {count}")
        if sorted(r.index for r in self.records) != list(range(count)):
            raise InvalidOutput("record indices must cover every unlabeled point exactly once")

        ranks_by_level: dict[int, list[int]] = {}
        for record in self.records:
            if not 0.0 <= record.margin <= 1.0:
                raise InvalidOutput(f"margin {record.margin} of point {record.index} is outside [0, 1]")
            ranks_by_level.setdefault(record.level, []).append(record.rank)
        if sorted(ranks_by_level) != list(range(len(ranks_by_level))):
            raise InvalidOutput("level ordinals must be contiguous from 0")
        for level, ranks in ranks_by_level.items():
            if sorted(ranks) != list(range(len(ranks))):
                raise InvalidOutput(f"ranks of level {level} are not a permutation of [0, {len(ranks)})")


def write_output(output: LabeledOutput, path: str | Path) -> None:
    """Write the output CSV sorted by (level, rank) with 6-decimal margins."""
    output.validate()
    rows = output.sorted_records()
    frame = pd.DataFrame(
        {
            "index": np.array([r.index for r in rows], dtype=np.int64),
            "label": np.array([r.label for r in rows], dtype=np.int64),
            "level": np.array([r.level for r in rows], dtype=np.int64),
            "rank": np.array([r.rank for r in rows], dtype=np.int64),
            "margin": np.array([r.margin for r in rows], dtype=np.float64),
        },
        columns=OUTPUT_HEADER,
    )
    try:
        frame.to_csv(path, index=False, float_format="%.6f", lineterminator="\n")
    except OSError as e:
        raise IoFailure(path, f"cannot write output ({e.strerror or e})") from e


def read_output(path: str | Path) -> LabeledOutput:
    """Parse an output CSV back into records."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise MalformedFile(path, "empty file")
    except OSError as e:
        raise IoFailure(path, f"cannot read output ({e.strerror or e})") from e
    if list(frame.columns) != OUTPUT_HEADER:
        raise MalformedFile(path, f"header must be exactly {','.join(OUTPUT_HEADER)!r}")

    records = []
    for row, (index, label, level, rank, margin) in enumerate(frame.to_numpy().tolist()):
        try:
            records.append(
                LabeledRecord(
                    index=int(index),
                    label=int(label),
                    level=int(level),
                    rank=int(rank),
                    margin=float(margin),
                )
            )
        except ValueError:
            raise MalformedFile(path, f"row {row} is not numeric")
    output = LabeledOutput(records=records)
    try:
        output.validate()
    except InvalidOutput as e:
        raise MalformedFile(path, str(e)) from e
    return output
