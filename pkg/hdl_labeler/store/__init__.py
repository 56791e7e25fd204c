from .embeddings import EmbeddingSet, load_embeddings, write_embeddings
from .labels import LabelVector, load_labels, write_labels
from .output import LabeledOutput, LabeledRecord, read_output, write_output

__all__ = [
    "EmbeddingSet",
    "LabelVector",
    "LabeledOutput",
    "LabeledRecord",
    "load_embeddings",
    "load_labels",
    "read_output",
    "write_embeddings",
    "write_labels",
    "write_output",
]
