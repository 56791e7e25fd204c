import numpy as np
import pytest

from hdl_labeler.index import build_union_index
from hdl_labeler.labelers import (
    LabelStatus,
    NeighborGraph,
    labeled_neighbor_counts,
    run_hdl,
    run_knn_dv,
    score_matrix,
    second_level_order,
    select_first_level,
)
from hdl_labeler.store import EmbeddingSet, LabelVector, write_output
from hdl_labeler.utils.enum import Metric
from hdl_labeler.utils.errors import EmptyLabeledSet, InvalidK, KTooLarge, LabelingError
from hdl_labeler.utils.workers import WorkerPool

from .oracles import literal_hdl, random_instance


def _instance_params(seed):
    rng = np.random.default_rng(10_000 + seed)
    n = int(rng.integers(1, 61))
    m = int(rng.integers(1, 41))
    d = int(rng.choice([2, 8]))
    c = int(rng.integers(2, 6))
    k = int(rng.choice([k for k in (1, 3, 5) if k <= n + m - 1]))
    return n, m, d, c, k


def test_line_example(line_example):
    labeled, labels, unlabeled = line_example
    output = run_hdl(labeled, labels, unlabeled, 2, Metric.Euclidean)

    first = output.levels[0]
    assert first.members == (2, 4)
    assert first.l_max == 1
    assert first.scores == (1, 1)
    assert first.order == (2, 4)

    assert output.trace() == [(0, 0, 0, 0), (2, 0, 1, 1), (1, 1, 0, 0)]
    margins = {r.index: r.margin for r in output.records}
    assert margins == {0: 1.0, 2: 1.0, 1: 0.5}
    assert output.level_count == 2


def test_first_level_counts_on_the_line(line_example):
    labeled, labels, unlabeled = line_example
    index = build_union_index(labeled, unlabeled, Metric.Euclidean)
    status = LabelStatus.initial(labels, unlabeled.count)
    counts = labeled_neighbor_counts(index, status, 2)
    assert counts == {2: 1, 3: 0, 4: 1}
    assert select_first_level(counts) == (2, 4)


def test_first_level_may_have_zero_max():
    assert select_first_level({7: 0, 5: 0}) == (5, 7)
    with pytest.raises(LabelingError):
        select_first_level({})


@pytest.mark.parametrize("seed", range(120))
def test_trace_matches_literal_hierarchical_labeling(seed):
    n, m, d, c, k = _instance_params(seed)
    labeled, labels, unlabeled = random_instance(seed, n, m, d, c)
    output = run_hdl(labeled, labels, unlabeled, k)
    trace, margins, _ = literal_hdl(labeled, labels, unlabeled, k)

    assert output.trace() == trace
    assert [r.margin for r in output.sorted_records()] == pytest.approx(margins)
    # every unlabeled point exactly once, levels contiguous
    output.validate(expected_count=m)
    assert sum(plan.size for plan in output.levels) == m


def test_random_instance_with_fixed_shape():
    labeled, labels, unlabeled = random_instance(11, 30, 20, 2, 3)
    output = run_hdl(labeled, labels, unlabeled, 3)
    trace, _, matrices = literal_hdl(labeled, labels, unlabeled, 3)
    assert output.trace() == trace
    for plan, (members, matrix) in zip(output.levels, matrices):
        assert list(plan.members) == members
        assert list(plan.scores) == [sum(row) for row in matrix]


@pytest.mark.parametrize("seed", range(120))
def test_closed_form_scores_match_materialized_matrix(seed):
    n, m, d, c, k = _instance_params(seed)
    labeled, labels, unlabeled = random_instance(seed, n, m, d, c)
    index = build_union_index(labeled, unlabeled)
    graph = NeighborGraph(index, k)
    status = LabelStatus.initial(labels, m)

    counts = labeled_neighbor_counts(index, status, k)
    assert graph.counts(status).tolist() == [counts[u] for u in range(n, n + m)]

    members = select_first_level(counts)[:20]
    plan = second_level_order(index, status, members, k, graph=graph)
    assert list(plan.scores) == score_matrix(graph, status, members).sum(axis=1).tolist()

    # arbitrary member subsets, too
    rng = np.random.default_rng(seed)
    subset = rng.choice(np.arange(n, n + m), size=min(m, int(rng.integers(1, 21))), replace=False)
    plan = second_level_order(index, status, subset, k, graph=graph)
    assert list(plan.scores) == score_matrix(graph, status, subset).sum(axis=1).tolist()


def test_second_level_order_prefers_shared_neighbors():
    # a and c both have b in their 1-NN; b's labeling helps two members
    labeled = EmbeddingSet.from_array([[0.0, 1.0], [100.0, 1.0]])
    labels = LabelVector.from_sequence([0, 1])
    unlabeled = EmbeddingSet.from_array([[40.0, 1.0], [50.0, 1.0], [61.0, 1.0]])
    index = build_union_index(labeled, unlabeled, Metric.Euclidean)
    status = LabelStatus.initial(labels, 3)
    plan = second_level_order(index, status, [2, 3, 4], 1)
    assert plan.scores == (1, 2, 0)
    assert plan.order == (3, 2, 4)


def test_single_member_scores_zero(line_example):
    labeled, labels, unlabeled = line_example
    index = build_union_index(labeled, unlabeled, Metric.Euclidean)
    status = LabelStatus.initial(labels, unlabeled.count)
    plan = second_level_order(index, status, [3], 2)
    assert plan.scores == (0,) and plan.order == (3,)


@pytest.mark.parametrize("seed", range(10))
def test_labeled_neighbor_counts_never_decrease(seed):
    labeled, labels, unlabeled = random_instance(seed, 8, 25, 2, 3)
    k = 3
    output = run_hdl(labeled, labels, unlabeled, k)
    index = build_union_index(labeled, unlabeled)
    status = LabelStatus.initial(labels, unlabeled.count)
    previous = labeled_neighbor_counts(index, status, k)
    for index_m, _, _, label in output.trace()[:-1]:
        status.mark(8 + index_m, label)
        current = labeled_neighbor_counts(index, status, k)
        assert all(current[u] >= previous[u] for u in current)
        previous = current


def test_single_unlabeled_point_agrees_with_knn_dv():
    labeled, labels, _ = random_instance(4, 20, 1, 8, 3)
    unlabeled = EmbeddingSet.from_array(labeled.data[:1] * 1.01)
    hdl = run_hdl(labeled, labels, unlabeled, 3)
    knn = run_knn_dv(labeled, labels, unlabeled, 3)
    assert hdl.records[0].label == knn.records[0].label
    assert hdl.level_count == 1


def test_fully_labeled_input_gives_empty_output():
    labeled, labels, _ = random_instance(0, 5, 1, 2, 2)
    empty = EmbeddingSet.from_array(np.zeros((0, 2)))
    output = run_hdl(labeled, labels, empty, 3)
    assert len(output) == 0 and output.level_count == 0 and output.levels == ()


def test_zero_voter_fallback_uses_current_labeled_points():
    # the far-away pair only see each other, so L_max reaches 0
    labeled = EmbeddingSet.from_array([[0.0, 1.0], [1.0, 1.0]])
    labels = LabelVector.from_sequence([0, 1])
    unlabeled = EmbeddingSet.from_array([[50.0, 1.0], [51.0, 1.0]])
    output = run_hdl(labeled, labels, unlabeled, 1, Metric.Euclidean)
    assert output.fallback_count == 1
    first = output.sorted_records()[0]
    assert first.fallback and first.label == 1
    second = output.sorted_records()[1]
    assert not second.fallback and second.label == 1


def test_scale_invariance_under_cosine(tmp_path):
    labeled, labels, unlabeled = random_instance(21, 40, 60, 8, 4)
    scaled_labeled = EmbeddingSet.from_array(labeled.data * 3.7)
    scaled_unlabeled = EmbeddingSet.from_array(unlabeled.data * 3.7)
    for labeler in (run_hdl, run_knn_dv):
        write_output(labeler(labeled, labels, unlabeled, 3), tmp_path / "a.csv")
        write_output(labeler(scaled_labeled, labels, scaled_unlabeled, 3), tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_thread_count_does_not_change_output(tmp_path):
    labeled, labels, unlabeled = random_instance(8, 50, 120, 8, 4)
    with WorkerPool(1) as one:
        write_output(run_hdl(labeled, labels, unlabeled, 5, pool=one, chunk_size=9), tmp_path / "one.csv")
    with WorkerPool(8) as many:
        write_output(run_hdl(labeled, labels, unlabeled, 5, pool=many, chunk_size=9), tmp_path / "many.csv")
    assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "many.csv").read_bytes()


def test_errors(line_example):
    labeled, labels, unlabeled = line_example
    with pytest.raises(InvalidK):
        run_hdl(labeled, labels, unlabeled, 0)
    with pytest.raises(KTooLarge):
        run_hdl(labeled, labels, unlabeled, 5)
    empty = EmbeddingSet.from_array(np.zeros((0, 2)))
    with pytest.raises(EmptyLabeledSet):
        run_hdl(empty, LabelVector.from_sequence([]), unlabeled, 1)


def test_label_status_is_monotone(line_example):
    _, labels, _ = line_example
    status = LabelStatus.initial(labels, 2)
    status.mark(2, 1)
    assert status.assigned_labels == {2: 1}
    with pytest.raises(LabelingError):
        status.mark(2, 0)
    with pytest.raises(LabelingError):
        status.mark(0, 0)
