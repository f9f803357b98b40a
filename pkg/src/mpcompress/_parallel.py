"""Fork-join helper shared by the parallel phases.

Work items are split into contiguous batches, one per worker; results come
back in input order, so output never depends on scheduling.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, Union

Threads = Union[int, str, None]


def resolve_threads(threads: Threads) -> int:
    if threads is None or threads == "auto":
        return max(1, os.cpu_count() or 1)
    n = int(threads)
    if n < 1:
        raise ValueError(f"thread count must be positive, got {threads!r}")
    return n


def run_batches(fn: Callable[[int, int], object], n_items: int, threads: Threads) -> list:
    """Call ``fn(start, end)`` over a partition of ``range(n_items)``."""
    workers = min(resolve_threads(threads), max(1, n_items))
    if workers == 1 or n_items < 2:
        return [fn(0, n_items)]
    step = -(-n_items // workers)
    bounds = [(s, min(s + step, n_items)) for s in range(0, n_items, step)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))


def map_items(fn: Callable, items: Sequence, threads: Threads) -> list:
    """``[fn(x) for x in items]``, batched over a thread pool."""

    def batch(start: int, end: int) -> list:
        return [fn(items[i]) for i in range(start, end)]

    out = []
    for part in run_batches(batch, len(items), threads):
        out.extend(part)
    return out
