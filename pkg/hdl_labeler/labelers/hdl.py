"""Hierarchical Dynamic Labeling.

Each outer iteration takes every still-unlabeled point whose k union
neighbors contain the most labeled points (the first level), orders those
points by how many labeled neighbors their labeling would give the rest of
the level (the second level), then labels them one at a time. Every newly
labeled point joins the labeled set immediately.

Neighbor lists never change: only label membership does. Counts are
maintained through the reverse kNN adjacency instead of being rescanned.
"""
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from ..index.knn import UnionIndex, build_union_index
from ..store.embeddings import EmbeddingSet
from ..store.labels import LabelVector
from ..store.output import LabeledOutput, LabeledRecord
from ..utils.enum import Metric
from ..utils.errors import CountMismatch, EmptyLabeledSet, InvalidK, KTooLarge, LabelingError
from ..utils.logger import get_formatted_logger
from ..utils.workers import WorkerPool
from .voting import vote

logger = get_formatted_logger("hdl_labeler.labelers.hdl")


@dataclass
class LabelStatus:
    """Labeled/unlabeled bitmap over global ids plus the label of every labeled id."""

    labeled: np.ndarray
    labels: np.ndarray
    n_initial: int
    assigned_labels: dict[int, int] = field(default_factory=dict)

    @classmethod
    def initial(cls, labels: LabelVector, n_unlabeled: int) -> "LabelStatus":
        n = len(labels)
        labeled = np.zeros(n + n_unlabeled, dtype=bool)
        labeled[:n] = True
        values = np.full(n + n_unlabeled, -1, dtype=np.int64)
        values[:n] = labels.labels
        return cls(labeled=labeled, labels=values, n_initial=n)

    @property
    def size(self) -> int:
        return int(self.labeled.shape[0])

    @property
    def done(self) -> bool:
        return bool(self.labeled.all())

    def unlabeled_ids(self) -> np.ndarray:
        return np.flatnonzero(~self.labeled)

    def mark(self, global_id: int, label: int) -> None:
        if self.labeled[global_id]:
            raise LabelingError(f"point {global_id} is already labeled")
        self.labeled[global_id] = True
        self.labels[global_id] = label
        self.assigned_labels[int(global_id)] = int(label)


@dataclass(frozen=True)
class LevelPlan:
    level_ordinal: int
    members: tuple[int, ...]
    l_max: int
    scores: tuple[int, ...]
    order: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


class NeighborGraph:
    """Union kNN lists of the unlabeled points and their reverse adjacency."""

    def __init__(self, index: UnionIndex, k: int, pool: WorkerPool | None = None, chunk_size: int = 256):
        self.k = k
        self.n_labeled = index.n_labeled
        self.size = index.size
        query_ids = np.arange(index.n_labeled, index.size, dtype=np.int64)
        self.neighbors, _ = index.neighbors(query_ids, k, pool=pool, chunk_size=chunk_size)

        # reverse[v - N] lists the unlabeled points whose kNN contain unlabeled v
        sources = np.repeat(query_ids, k)
        targets = self.neighbors.reshape(-1)
        keep = targets >= self.n_labeled
        sources, targets = sources[keep], targets[keep]
        order = np.argsort(targets, kind="stable")
        sources, targets = sources[order], targets[order]
        bounds = np.searchsorted(targets, query_ids, side="left")
        ends = np.searchsorted(targets, query_ids, side="right")
        self.reverse = [sources[a:b] for a, b in zip(bounds, ends)]

    def neighbors_of(self, global_id: int) -> np.ndarray:
        return self.neighbors[global_id - self.n_labeled]

    def reverse_of(self, global_id: int) -> np.ndarray:
        return self.reverse[global_id - self.n_labeled]

    def counts(self, status: LabelStatus) -> np.ndarray:
        """Labeled-neighbor count of every unlabeled row m (recounted from scratch)."""
        if self.neighbors.size == 0:
            return np.zeros(self.neighbors.shape[0], dtype=np.int64)
        return status.labeled[self.neighbors].sum(axis=1).astype(np.int64)

    def in_degree(self, members: np.ndarray) -> np.ndarray:
        """For each member i, the number of other members whose kNN contain i."""
        in_level = np.zeros(self.size, dtype=bool)
        in_level[members] = True
        return np.array([int(in_level[self.reverse_of(i)].sum()) for i in members], dtype=np.int64)


def labeled_neighbor_counts(index: UnionIndex, status: LabelStatus, k: int) -> dict[int, int]:
    """L for every unlabeled global id, by a fresh kNN scan under ``status``."""
    unlabeled = status.unlabeled_ids()
    if unlabeled.size == 0:
        raise LabelingError("no unlabeled points to count")
    counts = {}
    for u in unlabeled:
        neighbors = index.knn(int(u), k).indices
        counts[int(u)] = int(status.labeled[list(neighbors)].sum())
    return counts


def select_first_level(counts: Mapping[int, int]) -> tuple[int, ...]:
    """Every id attaining the maximal count, ascending. The maximum may be 0."""
    if not counts:
        raise LabelingError("cannot select a first level from an empty count map")
    top = max(counts.values())
    return tuple(sorted(i for i, c in counts.items() if c == top))


def _order(members: np.ndarray, scores: np.ndarray) -> np.ndarray:
    # descending score, then ascending id
    return members[np.lexsort((members, -scores))]


def second_level_order(
    index: UnionIndex,
    status: LabelStatus,
    members: Iterable[int],
    k: int,
    graph: NeighborGraph | None = None,
    level_ordinal: int = 0,
) -> LevelPlan:
    """Order a first level by sum(l[i]) = (sum of the others' counts) + in-degree of i.

    Labeling i adds one labeled neighbor to exactly those members whose kNN
    contain i, so the row sum of the hypothetical count matrix reduces to the
    closed form above.
    """
    members = np.array(sorted(int(m) for m in members), dtype=np.int64)
    if members.size == 0:
        raise LabelingError("a level needs at least one member")
    graph = graph if graph is not None else NeighborGraph(index, k)
    base = graph.counts(status)[members - graph.n_labeled]
    scores = (base.sum() - base) + graph.in_degree(members)
    return LevelPlan(
        level_ordinal=level_ordinal,
        members=tuple(int(m) for m in members),
        l_max=int(base.max()),
        scores=tuple(int(s) for s in scores),
        order=tuple(int(m) for m in _order(members, scores)),
    )


def score_matrix(graph: NeighborGraph, status: LabelStatus, members: Iterable[int]) -> np.ndarray:
    """Materialize l: row i holds the others' labeled-neighbor counts once i is labeled."""
    members = [int(m) for m in sorted(members)]
    s = len(members)
    matrix = np.zeros((s, max(s - 1, 0)), dtype=np.int64)
    hypothetical = status.labeled.copy()
    for i, member in enumerate(members):
        hypothetical[member] = True
        others = [m for m in members if m != member]
        for j, other in enumerate(others):
            matrix[i, j] = int(hypothetical[graph.neighbors_of(other)].sum())
        hypothetical[member] = False
    return matrix


def run_hdl(
    labeled: EmbeddingSet,
    labels: LabelVector,
    unlabeled: EmbeddingSet,
    k: int,
    metric: Metric | str = Metric.Cosine,
    pool: WorkerPool | None = None,
    chunk_size: int = 256,
) -> LabeledOutput:
    """Label ``unlabeled`` level by level until every point is labeled."""
    if len(labels) != labeled.count:
        raise CountMismatch("labels", labeled.count, len(labels))
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidK(k)
    if unlabeled.count == 0:
        logger.warning("No unlabeled points; nothing to label")
        return LabeledOutput(records=[], method="hdl", k=k)
    if labeled.count == 0:
        raise EmptyLabeledSet()
    available = labeled.count + unlabeled.count - 1
    if k > available:
        raise KTooLarge(k, available)

    index = build_union_index(labeled, unlabeled, metric)
    graph = NeighborGraph(index, k, pool=pool, chunk_size=chunk_size)
    status = LabelStatus.initial(labels, unlabeled.count)
    n = labeled.count
    counts = graph.counts(status)

    records: list[LabeledRecord] = []
    plans: list[LevelPlan] = []
    level = 0
    while not status.done:
        remaining = np.flatnonzero(~status.labeled[n:])
        l_max = int(counts[remaining].max())
        members = remaining[counts[remaining] == l_max] + n
        scores = (members.size - 1) * l_max + graph.in_degree(members)
        order = _order(members, scores)
        plan = LevelPlan(
            level_ordinal=level,
            members=tuple(int(m) for m in members),
            l_max=l_max,
            scores=tuple(int(s) for s in scores),
            order=tuple(int(m) for m in order),
        )
        plans.append(plan)
        logger.debug(f"Level {level}: {plan.size} members with L_max={l_max}, {remaining.size} remaining")

        for rank, point in enumerate(plan.order):
            neighbors = graph.neighbors_of(point)
            voters = status.labels[neighbors[status.labeled[neighbors]]]
            fallback = voters.size == 0
            if fallback:
                pool_size = int(status.labeled.sum())
                nearest = index.knn_among(point, min(k, pool_size), status.labeled)
                voters = status.labels[list(nearest.indices)]
            tally = vote(voters, labels.num_classes)
            status.mark(point, tally.winner)
            reverse = graph.reverse_of(point)
            counts[reverse - n] += 1
            records.append(
                LabeledRecord(
                    index=point - n,
                    label=tally.winner,
                    level=level,
                    rank=rank,
                    margin=tally.margin,
                    tied=tally.tied,
                    fallback=fallback,
                )
            )
        level += 1

    output = LabeledOutput(records=records, method="hdl", k=k, levels=tuple(plans))
    if output.fallback_count:
        logger.warning(f"{output.fallback_count} points had no labeled union neighbors and voted over the nearest labeled points")
    if output.tie_count:
        logger.warning(f"HDL broke {output.tie_count} vote ties toward the smallest class id")
    logger.info(f"HDL labeled {len(records)} points in {level} levels with k={k}")
    return output
