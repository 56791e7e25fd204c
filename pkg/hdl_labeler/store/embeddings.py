"""EMB1 embedding files and the in-memory ``EmbeddingSet``.

Layout: ASCII ``EMB1``, ``uint32`` dim, ``uint64`` count, then ``count*dim``
``float32`` values row-major; everything little-endian, no padding or footer.
"""
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..utils.errors import IoFailure, MalformedFile, NonFiniteValue, ZeroNormRow
from ..utils.logger import get_formatted_logger

logger = get_formatted_logger("hdl_labeler.store")

EMB1_MAGIC = b"EMB1"
EMB1_HEADER = struct.Struct("<4sIQ")
FLOAT_DTYPE = np.dtype("<f4")


@dataclass(frozen=True, eq=False)
class EmbeddingSet:
    """Immutable N x d matrix of finite float32 rows with cached float64 norms."""

    data: np.ndarray
    norms: np.ndarray

    @property
    def count(self) -> int:
        return int(self.data.shape[0])

    @property
    def dim(self) -> int:
        return int(self.data.shape[1])

    def __len__(self) -> int:
        return self.count

    @classmethod
    def from_array(cls, data, source: str | Path = "<array>") -> "EmbeddingSet":
        """Validate ``data`` and build a set; rows keep their order."""
        array = np.array(data, dtype=np.float32, copy=True)
        if array.ndim != 2 or array.shape[1] < 1:
            raise MalformedFile(source, f"expected a 2-D matrix with dim >= 1, got shape {array.shape}")

        finite = np.isfinite(array).all(axis=1)
        if not finite.all():
            raise NonFiniteValue(source, int(np.argmin(finite)))

        wide = array.astype(np.float64)
        norms = np.sqrt(np.einsum("ij,ij->i", wide, wide))
        zero = norms == 0.0
        if zero.any():
            raise ZeroNormRow(source, int(np.argmax(zero)))

        array.setflags(write=False)
        norms.setflags(write=False)
        return cls(data=array, norms=norms)

    def to_bytes(self) -> bytes:
        header = EMB1_HEADER.pack(EMB1_MAGIC, self.dim, self.count)
        return header + self.data.astype(FLOAT_DTYPE, copy=False).tobytes(order="C")


def load_embeddings(path: str | Path) -> EmbeddingSet:
    """Read an EMB1 file."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise IoFailure(path, f"cannot read embeddings ({e.strerror or e})") from e

    if len(raw) < EMB1_HEADER.size:
        raise MalformedFile(path, "truncated header")
    magic, dim, count = EMB1_HEADER.unpack_from(raw, 0)
    if magic != EMB1_MAGIC:
        raise MalformedFile(path, f"bad magic {magic!r}")
    if dim == 0:
        raise MalformedFile(path, "dim must be positive")

    expected = EMB1_HEADER.size + count * dim * FLOAT_DTYPE.itemsize
    if len(raw) < expected:
        raise MalformedFile(path, f"truncated body: {len(raw)} bytes, expected {expected}")
    if len(raw) > expected:
        raise MalformedFile(path, f"{len(raw) - expected} trailing bytes after {count} rows")

    if count == 0:
        values = np.empty(0, dtype=FLOAT_DTYPE)
    else:
        values = np.frombuffer(raw, dtype=FLOAT_DTYPE, count=count * dim, offset=EMB1_HEADER.size)
    embeddings = EmbeddingSet.from_array(values.reshape(count, dim), source=path)
    logger.debug(f"Loaded {embeddings.count} embeddings of dim {embeddings.dim} from {path}")
    return embeddings


def write_embeddings(embeddings: EmbeddingSet | np.ndarray, path: str | Path) -> None:
    """Write an EMB1 file; floats are stored bit-exactly."""
    if not isinstance(embeddings, EmbeddingSet):
        embeddings = EmbeddingSet.from_array(embeddings)
    path = Path(path)
    try:
        with open(path, "wb") as f:
            f.write(embeddings.to_bytes())
    except OSError as e:
        raise IoFailure(path, f"cannot write embeddings ({e.strerror or e})") from e
