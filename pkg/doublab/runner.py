"""Replicate orchestration: independent seeded streams, ordered results."""

import logging
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import TypeVar

from .rng import RngStream

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _call(fn: Callable[[RngStream], T], master: int, salt: tuple[int, ...], index: int) -> T:
    return fn(RngStream.for_replicate(master, index, *salt))


def run_replicates(
    fn: Callable[[RngStream], T],
    master: int,
    count: int,
    parallelism: int = 1,
    salt: tuple[int, ...] = (),
    label: str = "",
) -> list[T]:
    """Run ``fn`` once per replicate and return results in replicate order.

    ``fn`` receives the stream of its replicate; with ``parallelism > 1`` it
    must be picklable (a module-level function or a ``functools.partial``).
    """
    start = time.perf_counter()
    task = partial(_call, fn, master, tuple(salt))
    if parallelism <= 1 or count <= 1:
        results = [task(i) for i in range(count)]
    else:
        chunksize = max(1, count // (parallelism * 8))
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(task, range(count), chunksize=chunksize))
    logger.info(
        "%s: %d replicates in %.2fs (parallelism %d)",
        label or getattr(fn, "__name__", "replicates"),
        count,
        time.perf_counter() - start,
        parallelism,
    )
    return results
