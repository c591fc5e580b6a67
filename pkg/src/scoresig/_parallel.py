from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

JOBS_ENV = "SCORESIG_JOBS"


def default_jobs() -> int:
    value = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(value)
    except ValueError:
        raise ValueError(f"{JOBS_ENV} must be an integer, got {value!r}") from None
    return max(1, jobs)


def chunk_sizes(total: int, chunk: int) -> list[int]:
    """Split ``total`` work items into fixed-size chunks (last one may be short)."""
    full, rest = divmod(total, chunk)
    return [chunk] * full + ([rest] if rest else [])


def ordered_map(fn: Callable[[T], R], items: Sequence[T], num_jobs: int = 1, processes: bool = False) -> list[R]:
    """``[fn(x) for x in items]``, optionally spread over a worker pool.

    Results come back in input order, so callers that tie each item to its
    own random substream get identical output for every ``num_jobs``.
    """
    if num_jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    pool_type = ProcessPoolExecutor if processes else ThreadPoolExecutor
    with pool_type(max_workers=min(num_jobs, len(items))) as pool:
        return list(pool.map(fn, items))
