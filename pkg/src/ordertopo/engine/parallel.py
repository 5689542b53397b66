"""Chunked, order-preserving fan-out over a process pool."""

import itertools
import logging
from collections import deque
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import Future, ProcessPoolExecutor
from typing import TypeVar

from tqdm import tqdm

from ordertopo.config import EngineConfig

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

WINDOW_PER_WORKER = 4  # chunks in flight per worker process


def chunked(items: Iterable[T], size: int) -> Iterator[list[T]]:
    it = iter(items)
    while chunk := list(itertools.islice(it, size)):
        yield chunk


def map_chunks(
    fn: Callable[[list[T]], R],
    items: Iterable[T],
    config: EngineConfig,
    desc: str = "",
) -> Iterator[tuple[list[T], R]]:
    """Apply ``fn`` to consecutive chunks of ``items``.

    Yields ``(chunk, fn(chunk))`` in chunk order for every worker count.
    ``fn`` must be a picklable top-level callable when ``config.workers > 1``.
    """
    pending: deque[list[T]] = deque()

    def source() -> Iterator[list[T]]:
        for chunk in chunked(items, config.chunk_size):
            pending.append(chunk)
            yield chunk

    with tqdm(desc=desc, unit="chunk", disable=not config.progress, leave=False) as bar:
        if config.workers <= 1:
            for result in map(fn, source()):
                yield pending.popleft(), result
                bar.update()
            return
        logger.debug("%s: fanning out to %d workers", desc, config.workers)
        window: deque[Future[R]] = deque()
        pool = ProcessPoolExecutor(max_workers=config.workers)
        try:
            for chunk in source():
                window.append(pool.submit(fn, chunk))
                if len(window) >= WINDOW_PER_WORKER * config.workers:
                    yield pending.popleft(), window.popleft().result()
                    bar.update()
            while window:
                yield pending.popleft(), window.popleft().result()
                bar.update()
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
