import numpy as np
import pytest

from hdl_labeler.store import EmbeddingSet, LabelVector, write_embeddings, write_labels
from hdl_labeler.synth import generate, make_spec


@pytest.fixture
def line_example():
    """Three unlabeled points between two labeled ends of a line (euclidean, k=2)."""
    labeled = EmbeddingSet.from_array([[0.0, 1.0], [10.0, 1.0]])
    labels = LabelVector.from_sequence([0, 1])
    unlabeled = EmbeddingSet.from_array([[1.0, 1.0], [5.0, 1.0], [9.0, 1.0]])
    return labeled, labels, unlabeled


@pytest.fixture
def small_dataset():
    spec = make_spec(num_classes=3, dim=8, class_counts=[40, 40, 40], sigma=0.8, labeled_fraction=0.25, seed=5)
    return generate(spec)


@pytest.fixture
def dataset_files(tmp_path, small_dataset):
    """The small synthetic set written in the on-disk formats."""
    paths = {
        "labeled": tmp_path / "labeled.emb",
        "labels": tmp_path / "labels.csv",
        "unlabeled": tmp_path / "unlabeled.emb",
        "truth": tmp_path / "truth.csv",
    }
    write_embeddings(small_dataset.labeled, paths["labeled"])
    write_labels(small_dataset.labels, paths["labels"])
    write_embeddings(small_dataset.unlabeled, paths["unlabeled"])
    write_labels(small_dataset.truth, paths["truth"])
    return paths


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
