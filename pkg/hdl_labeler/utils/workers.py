from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Thread pool capped at ``max_workers`` whose results keep input order.

    Work is split into fixed chunks and every chunk is computed by the same
    function, so results never depend on the worker count.
    """

    def __init__(self, max_workers: int = 1):
        if max_workers < 1:
            raise ValueError(f"max_workers must be >= 1, got {max_workers}")
        self.max_workers = max_workers
        self.executor = ThreadPoolExecutor(max_workers=max_workers) if max_workers > 1 else None

    def map_chunks(
        self,
        fn: Callable[[Sequence[T]], list[R]],
        items: Sequence[T],
        chunk_size: int = 256,
    ) -> list[R]:
        chunks = [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]
        if self.executor is None:
            parts = [fn(chunk) for chunk in chunks]
        else:
            parts = list(self.executor.map(fn, chunks))
        results: list[R] = []
        for part in parts:
            results.extend(part)
        return results

    def shutdown(self) -> None:
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    def __enter__(self) -> "WorkerPool":
        return self

    def __exit__(self, *exc) -> None:
        self.shutdown()
