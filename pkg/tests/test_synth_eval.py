import numpy as np
import pytest

from hdl_labeler.labelers import run_hdl, run_knn_dv
from hdl_labeler.store import LabeledOutput, LabeledRecord, LabelVector, write_embeddings
from hdl_labeler.synth import compare_clusterability, evaluate, generate, long_tailed_counts, make_spec, run_trials
from hdl_labeler.utils.enum import Metric
from hdl_labeler.utils.errors import CountMismatch, InvalidSpec


def _output(labels):
    return LabeledOutput(
        records=[LabeledRecord(index=i, label=y, level=0, rank=i, margin=1.0) for i, y in enumerate(labels)]
    )


def test_stratified_split():
    data = generate(make_spec(num_classes=2, dim=2, class_counts=[10, 10], labeled_fraction=0.5, seed=0))
    assert data.labeled.count == 10 and data.unlabeled.count == 10
    assert np.bincount(data.labels.labels).tolist() == [5, 5]
    assert np.bincount(data.truth.labels).tolist() == [5, 5]


def test_labeled_counts_round_up_per_class():
    data = generate(make_spec(num_classes=3, dim=3, class_counts=[7, 11, 3], labeled_fraction=0.1, seed=1))
    assert np.bincount(data.labels.labels, minlength=3).tolist() == [1, 2, 1]
    assert np.bincount(data.truth.labels, minlength=3).tolist() == [6, 9, 2]


def test_imbalance_factor_of_long_tailed_counts():
    counts = long_tailed_counts(500, 10, 100, "exp")
    assert counts[0] == 500 and counts[-1] == 5
    assert counts == sorted(counts, reverse=True)
    spec = make_spec(num_classes=10, dim=10, class_counts=counts)
    assert spec.imbalance_factor == 100

    assert long_tailed_counts(500, 4, 50, "step") == [500, 500, 10, 10]
    assert long_tailed_counts(20, 3, 7, "none") == [20, 20, 20]
    with pytest.raises(InvalidSpec):
        long_tailed_counts(10, 3, 0.5)


def test_invalid_specs():
    with pytest.raises(InvalidSpec):
        make_spec(num_classes=3, dim=2, class_counts=[5, 5, 5])
    with pytest.raises(InvalidSpec):
        make_spec(num_classes=2, dim=2, class_counts=[5, 0])
    with pytest.raises(InvalidSpec):
        make_spec(num_classes=2, dim=2, class_counts=[5, 5], labeled_fraction=0)
    with pytest.raises(InvalidSpec):
        make_spec(num_classes=2, dim=2, class_counts=[5, 5], means=[[0, 0], [1, 1]], sigma=0)


def test_generation_is_bit_reproducible(tmp_path):
    spec = make_spec(num_classes=3, dim=5, class_counts=[20, 30, 40], sigma=0.7, seed=42)
    for name in ("a", "b"):
        data = generate(spec)
        write_embeddings(data.labeled, tmp_path / f"{name}_l.emb")
        write_embeddings(data.unlabeled, tmp_path / f"{name}_u.emb")
    assert (tmp_path / "a_l.emb").read_bytes() == (tmp_path / "b_l.emb").read_bytes()
    assert (tmp_path / "a_u.emb").read_bytes() == (tmp_path / "b_u.emb").read_bytes()
    other = generate(spec.model_copy(update={"seed": 43}))
    assert other.unlabeled.data.tobytes() != generate(spec).unlabeled.data.tobytes()


def test_degenerate_clusters_are_labeled_perfectly():
    spec = make_spec(num_classes=3, dim=3, class_counts=[6, 6, 6], sigma=0.0, labeled_fraction=0.5, seed=0)
    data = generate(spec)
    assert set(map(tuple, data.labeled.data.tolist())) == {(4.0, 0.0, 0.0), (0.0, 4.0, 0.0), (0.0, 0.0, 4.0)}
    for labeler in (run_hdl, run_knn_dv):
        output = labeler(data.labeled, data.labels, data.unlabeled, 2)
        assert evaluate(output, data.truth).accuracy == 1.0


def test_evaluate_all_correct_and_all_wrong():
    truth = LabelVector.from_sequence([0, 1, 1, 0])
    result = evaluate(_output([0, 1, 1, 0]), truth, method="hdl")
    assert result.accuracy == 1.0 and result.method == "hdl"

    result = evaluate(_output([1, 0, 0, 1]), truth)
    assert result.accuracy == 0.0
    assert result.confusion == [[0, 2], [2, 0]]


def test_evaluate_three_of_four():
    truth = LabelVector.from_sequence([0, 1, 2, 2])
    result = evaluate(_output([0, 1, 2, 0]), truth)
    assert result.accuracy == 0.75
    assert result.per_class == [1.0, 1.0, 0.5]
    assert np.trace(result.confusion) / 4 == result.accuracy
    assert result.to_dict()["confusion"] == [[1, 0, 0], [0, 1, 0], [1, 0, 1]]


def test_evaluate_reports_missing_classes_and_counts():
    truth = LabelVector.from_sequence([0, 0], num_classes=3)
    assert evaluate(_output([0, 0]), truth).per_class == [1.0, None, None]
    with pytest.raises(CountMismatch):
        evaluate(_output([0]), truth)


def test_union_neighbors_are_more_clusterable(small_dataset):
    comparison = compare_clusterability(small_dataset, 3)
    assert 0.0 <= comparison.labeled_only <= 1.0
    assert comparison.union >= comparison.labeled_only


def test_run_trials_summary():
    spec = make_spec(num_classes=3, dim=6, class_counts=[30] * 3, sigma=1.0, labeled_fraction=0.2, seed=10)
    summary = run_trials(spec, 3, 3)
    assert summary.seeds == [10, 11, 12]
    assert len(summary.hdl_accuracy) == len(summary.knn_dv_accuracy) == 3
    data = summary.to_dict()
    assert data["mean_gain"] == pytest.approx(np.mean(summary.hdl_accuracy) - np.mean(summary.knn_dv_accuracy))
    assert 0.0 <= data["hdl_win_rate"] <= 1.0


def rod_spec():
    """Four parallel rods, 25 labeled + 200 unlabeled points each, spaced sqrt(2) apart."""
    return make_spec(
        num_classes=4,
        dim=16,
        class_counts=[225] * 4,
        radius=1.0,
        sigma=0.05,
        axis_sigma=4.0,
        labeled_fraction=25 / 225,
    )


def test_axis_sigma_equal_to_sigma_is_isotropic():
    isotropic = generate(make_spec(num_classes=3, dim=5, class_counts=[20, 30, 40], sigma=0.7, seed=42))
    explicit = generate(make_spec(num_classes=3, dim=5, class_counts=[20, 30, 40], sigma=0.7, axis_sigma=0.7, seed=42))
    assert explicit.labeled.data.tobytes() == isotropic.labeled.data.tobytes()
    assert explicit.unlabeled.data.tobytes() == isotropic.unlabeled.data.tobytes()
    assert explicit.truth.labels.tolist() == isotropic.truth.labels.tolist()


def test_rods_stretch_only_the_last_axis():
    data = generate(rod_spec())
    points = np.concatenate([data.labeled.data, data.unlabeled.data]).astype(np.float64)
    spread = points.std(axis=0)
    assert 3.0 < spread[-1] < 5.0
    assert (spread[4:-1] < 0.1).all()
    assert data.labeled.count == 100 and data.unlabeled.count == 800
    with pytest.raises(InvalidSpec):
        make_spec(num_classes=4, dim=4, class_counts=[5] * 4, axis_sigma=2.0)
    with pytest.raises(InvalidSpec):
        make_spec(num_classes=2, dim=3, class_counts=[5, 5], axis_sigma=-1.0)


@pytest.mark.slow
def test_hdl_beats_knn_dv_on_average():
    summary = run_trials(rod_spec(), 3, 20, Metric.Euclidean)
    knn_dv_mean = np.mean(summary.knn_dv_accuracy)
    # sparse labeled points leave the rod ends closer to other rods than to their own labels
    assert 0.8 <= knn_dv_mean <= 0.95
    assert np.mean(summary.hdl_accuracy) >= knn_dv_mean
    assert summary.hdl_win_rate >= 0.6


@pytest.mark.slow
@pytest.mark.parametrize("imbalance_factor", [50, 100])
def test_hdl_helps_tail_classes(imbalance_factor):
    counts = long_tailed_counts(400, 4, imbalance_factor, "exp")
    spec = make_spec(num_classes=4, dim=16, class_counts=counts, sigma=1.0, labeled_fraction=0.1, seed=100)
    summary = run_trials(spec, 3, 20)
    tail = len(counts) - 1
    hdl_tail = [per_class[tail] for per_class in summary.hdl_per_class]
    knn_tail = [per_class[tail] for per_class in summary.knn_dv_per_class]
    assert np.mean(hdl_tail) >= np.mean(knn_tail)
