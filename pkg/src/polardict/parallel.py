"""Deterministic thread-pool mapping for block-parallel kernels.

Work items are fixed partitions chosen independently of the worker count, and
results are always consumed in submission order, so outputs are identical for
any number of threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """Apply fn to items, optionally on a thread pool, preserving input order."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def block_starts(total: int, block: int) -> list[int]:
    """Start offsets of consecutive fixed-size blocks covering range(total)."""
    return list(range(0, total, block))
