"""Bounded, order preserving worker pool."""
from __future__ import annotations

import logging
from collections import deque
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from itertools import islice
from typing import Literal, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

ExecutorKind = Literal["process", "thread"]

# Number of pending tasks per worker; keeps memory bounded for large corpora.
WINDOW_FACTOR = 2


def _create_executor(kind: ExecutorKind, jobs: int) -> Executor:
    if kind == "process":
        return ProcessPoolExecutor(max_workers=jobs)
    elif kind == "thread":
        return ThreadPoolExecutor(max_workers=jobs, thread_name_prefix="tho-worker")
    raise ValueError(f"Invalid executor kind: {kind}")


def _chunked(items: Iterable[T], size: int) -> Iterator[list[T]]:
    iterator = iter(items)
    while chunk := list(islice(iterator, size)):
        yield chunk


def _run_chunk(func: Callable[[T], R], chunk: list[T]) -> list[R]:
    return [func(item) for item in chunk]


def ordered_map(
    func: Callable[[T], R],
    items: Iterable[T],
    jobs: int = 1,
    executor: ExecutorKind = "process",
    chunksize: int = 1,
) -> Iterator[R]:
    """Apply ``func`` to all items, yielding the results in input order.

    Items are sent to the workers in chunks of ``chunksize``. At most
    ``jobs * WINDOW_FACTOR`` chunks are in flight, so the input can be a lazy stream.
    With ``jobs <= 1`` everything runs in the calling process.
    For the process executor, ``func`` and the items must be picklable.
    """
    if chunksize < 1:
        raise ValueError("chunksize should be at least 1")
    if jobs <= 1:
        yield from map(func, items)
        return

    logger.debug("Starting %d %s workers", jobs, executor)
    window = jobs * WINDOW_FACTOR
    with _create_executor(executor, jobs) as pool:
        pending = deque()
        for chunk in _chunked(items, chunksize):
            pending.append(pool.submit(_run_chunk, func, chunk))
            if len(pending) >= window:
                yield from pending.popleft().result()

        while pending:
            yield from pending.popleft().result()
