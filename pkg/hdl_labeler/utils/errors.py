"""Errors raised by the labeling engine.

Every domain error is a ``ValueError`` so callers that only know the
standard contract still catch them. The CLI maps any ``LabelingError`` to
exit status 1.
"""


class LabelingError(ValueError):
    """Base class for data and parameter errors."""


class MalformedFile(LabelingError):
    def __init__(self, path, reason: str):
        self.path = str(path)
        super().__init__(f"{self.path}: malformed file ({reason})")


class NonFiniteValue(LabelingError):
    def __init__(self, path, row: int):
        self.path = str(path)
        self.row = row
        super().__init__(f"{self.path}: non-finite value in row {row}")


class ZeroNormRow(LabelingError):
    def __init__(self, path, row: int):
        self.path = str(path)
        self.row = row
        super().__init__(f"{self.path}: row {row} has zero norm")


class CountMismatch(LabelingError):
    def __init__(self, what: str, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected {expected} rows, found {actual}")


class NegativeLabel(LabelingError):
    def __init__(self, path, row: int, value):
        self.path = str(path)
        self.row = row
        super().__init__(f"{self.path}: negative label {value} in row {row}")


class NonIntegerLabel(LabelingError):
    def __init__(self, path, row: int, value):
        self.path = str(path)
        self.row = row
        super().__init__(f"{self.path}: label {value!r} in row {row} is not an integer")


class LabelOutOfRange(LabelingError):
    pass


class DimMismatch(LabelingError):
    def __init__(self, left: int, right: int):
        super().__init__(f"embedding dimensions differ: {left} vs {right}")


class InvalidK(LabelingError):
    def __init__(self, k):
        super().__init__(f"k must be a positive integer, got {k!r}")


class KTooLarge(LabelingError):
    def __init__(self, k: int, available: int):
        self.k = k
        self.available = available
        super().__init__(f"k={k} exceeds the {available} available neighbor candidates")


class EmptyVoterSet(LabelingError):
    def __init__(self):
        super().__init__("cannot vote with an empty set of voters")


class DomainError(LabelingError):
    pass


class EmptySample(LabelingError):
    def __init__(self, count: int, p: float):
        super().__init__(f"sample fraction p={p} of {count} points selects no centers")


class EmptyLabeledSet(LabelingError):
    def __init__(self):
        super().__init__("the labeled set is empty")


class InvalidSpec(LabelingError):
    pass


class IoFailure(LabelingError):
    def __init__(self, path, reason: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {reason}")


class InvalidOutput(LabelingError):
    pass
