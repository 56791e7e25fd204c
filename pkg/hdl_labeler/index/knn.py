"""Exact brute-force k-nearest-neighbor search over labeled and unlabeled points.

Global ids ``[0, N)`` are the labeled rows and ``[N, N+M)`` the unlabeled rows.
Neighbor lists exclude the query and are sorted by ``(distance, global id)``.
"""
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..store.embeddings import EmbeddingSet
from ..utils.enum import Metric
from ..utils.errors import DimMismatch, InvalidK, KTooLarge
from ..utils.logger import get_formatted_logger
from ..utils.workers import WorkerPool

logger = get_formatted_logger("hdl_labeler.index")


@dataclass(frozen=True)
class NeighborList:
    query_id: int
    indices: tuple[int, ...]
    distances: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.indices)


def _check_k(k, available: int) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidK(k)
    if k > available:
        raise KTooLarge(int(k), available)
    return int(k)


def _select(distances: np.ndarray, candidates: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Pick the k candidates with the smallest (distance, id) keys."""
    d = distances[candidates]
    if candidates.size > 4 * k:
        kth = np.partition(d, k - 1)[k - 1]
        keep = np.flatnonzero(d <= kth)
        candidates, d = candidates[keep], d[keep]
    # candidates are ascending, so a stable sort breaks ties by lower id
    order = np.argsort(d, kind="stable")[:k]
    return candidates[order], d[order]


class UnionIndex:
    """Immutable index over the union of a labeled and an unlabeled set."""

    def __init__(self, points: np.ndarray, norms: np.ndarray, n_labeled: int, metric: Metric):
        self.metric = Metric(metric)
        self.n_labeled = int(n_labeled)
        self.size = int(points.shape[0])
        self.dim = int(points.shape[1])
        wide = points.astype(np.float64)
        if self.metric is Metric.Cosine:
            self._points = wide / norms[:, None]
        else:
            self._points = wide
        self._points.setflags(write=False)

    @property
    def n_unlabeled(self) -> int:
        return self.size - self.n_labeled

    def global_id(self, unlabeled_row: int) -> int:
        return self.n_labeled + int(unlabeled_row)

    def distances(self, query_id: int) -> np.ndarray:
        """Distances (float64) from ``query_id`` to every indexed point."""
        if not 0 <= query_id < self.size:
            raise IndexError(f"query id {query_id} outside [0, {self.size})")
        query = self._points[query_id]
        if self.metric is Metric.Cosine:
            dots = np.einsum("ij,j->i", self._points, query)
            return np.clip(1.0 - dots, 0.0, 2.0)
        diff = self._points - query
        return np.sqrt(np.einsum("ij,ij->i", diff, diff))

    def _candidates(self, query_id: int, labeled_only: bool) -> np.ndarray:
        stop = self.n_labeled if labeled_only else self.size
        candidates = np.arange(stop, dtype=np.int64)
        if query_id < stop:
            candidates = np.delete(candidates, query_id)
        return candidates

    def _search(self, query_id: int, k: int, candidates: np.ndarray) -> NeighborList:
        k = _check_k(k, candidates.size)
        ids, dists = _select(self.distances(query_id), candidates, k)
        return NeighborList(
            query_id=int(query_id),
            indices=tuple(int(i) for i in ids),
            distances=tuple(float(x) for x in dists),
        )

    def knn(self, query_id: int, k: int) -> NeighborList:
        """k nearest points of the union, excluding the query itself."""
        return self._search(query_id, k, self._candidates(query_id, labeled_only=False))

    def knn_within_labeled(self, query_id: int, k: int) -> NeighborList:
        """k nearest labeled points (global ids < N), excluding the query itself."""
        return self._search(query_id, k, self._candidates(query_id, labeled_only=True))

    def knn_among(self, query_id: int, k: int, mask: np.ndarray) -> NeighborList:
        """k nearest points whose ``mask`` entry is true, excluding the query itself."""
        allowed = np.array(mask, dtype=bool, copy=True)
        allowed[query_id] = False
        return self._search(query_id, k, np.flatnonzero(allowed))

    def neighbors(
        self,
        query_ids: Iterable[int],
        k: int,
        labeled_only: bool = False,
        pool: WorkerPool | None = None,
        chunk_size: int = 256,
    ) -> tuple[np.ndarray, np.ndarray]:
        """Batched ``knn``; returns (ids, distances) arrays of shape (len(query_ids), k)."""
        query_ids = [int(q) for q in query_ids]
        search = self.knn_within_labeled if labeled_only else self.knn

        def run(chunk):
            return [search(q, k) for q in chunk]

        if pool is None:
            results = run(query_ids)
        else:
            results = pool.map_chunks(run, query_ids, chunk_size=chunk_size)

        if not results:
            return np.empty((0, k), dtype=np.int64), np.empty((0, k), dtype=np.float64)
        ids = np.array([r.indices for r in results], dtype=np.int64)
        dists = np.array([r.distances for r in results], dtype=np.float64)
        return ids, dists


def build_union_index(
    labeled: EmbeddingSet,
    unlabeled: EmbeddingSet | None = None,
    metric: Metric | str = Metric.Cosine,
) -> UnionIndex:
    """Index N labeled and M unlabeled points under global ids [0, N+M)."""
    if unlabeled is None:
        points, norms = labeled.data, labeled.norms
    else:
        if labeled.dim != unlabeled.dim:
            raise DimMismatch(labeled.dim, unlabeled.dim)
        points = np.concatenate([labeled.data, unlabeled.data], axis=0)
        norms = np.concatenate([labeled.norms, unlabeled.norms], axis=0)
    index = UnionIndex(points, norms, n_labeled=labeled.count, metric=Metric(metric))
    logger.debug(
        f"Built {index.metric.value} index over {index.n_labeled} labeled + {index.n_unlabeled} unlabeled points"
    )
    return index
