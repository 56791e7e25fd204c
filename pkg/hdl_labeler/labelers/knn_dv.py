"""Baseline labeler: each unlabeled point votes among its k nearest labeled points."""
from ..index.knn import build_union_index
from ..store.embeddings import EmbeddingSet
from ..store.labels import LabelVector
from ..store.output import LabeledOutput, LabeledRecord
from ..utils.enum import Metric
from ..utils.errors import CountMismatch, InvalidK, KTooLarge
from ..utils.logger import get_formatted_logger
from ..utils.workers import WorkerPool
from .voting import vote

logger = get_formatted_logger("hdl_labeler.labelers.knn_dv")


def run_knn_dv(
    labeled: EmbeddingSet,
    labels: LabelVector,
    unlabeled: EmbeddingSet,
    k: int,
    metric: Metric | str = Metric.Cosine,
    pool: WorkerPool | None = None,
    chunk_size: int = 256,
) -> LabeledOutput:
    """Label every unlabeled point independently; all records sit on level 0 with rank m."""
    if len(labels) != labeled.count:
        raise CountMismatch("labels", labeled.count, len(labels))
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidK(k)
    if k > labeled.count:
        raise KTooLarge(k, labeled.count)

    index = build_union_index(labeled, unlabeled, metric)
    query_ids = [index.global_id(m) for m in range(unlabeled.count)]
    neighbor_ids, _ = index.neighbors(query_ids, k, labeled_only=True, pool=pool, chunk_size=chunk_size)

    records = []
    for m, row in enumerate(neighbor_ids):
        tally = vote(labels.labels[row], labels.num_classes)
        records.append(
            LabeledRecord(index=m, label=tally.winner, level=0, rank=m, margin=tally.margin, tied=tally.tied)
        )

    output = LabeledOutput(records=records, method="knn-dv", k=k)
    if output.tie_count:
        logger.warning(f"kNN-DV broke {output.tie_count} vote ties toward the smallest class id")
    logger.info(f"kNN-DV labeled {len(records)} points with k={k}")
    return output
