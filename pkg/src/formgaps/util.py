"""Window chunking and deterministic parallel mapping.

Chunk boundaries are a pure function of the requested range, never of the
worker count, and results are always combined in range order.  Runs are
therefore bit-identical for any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

DEFAULT_CHUNK = 1 << 22


def chunk_ranges(lo: int, hi: int, chunk: int = DEFAULT_CHUNK) -> list[tuple[int, int]]:
    """Closed subranges covering [lo, hi], in increasing order."""
    out = []
    start = lo
    while start <= hi:
        stop = min(start + chunk - 1, hi)
        out.append((start, stop))
        start = stop + 1
    return out


def resolve_threads(threads: int | None = None) -> int:
    """Worker count: explicit argument wins, then FORMGAPS_THREADS, then all cores."""
    if threads is not None and threads >= 1:
        return threads
    env = os.environ.get("FORMGAPS_THREADS", "")
    if env.isdigit() and int(env) >= 1:
        return int(env)
    return os.cpu_count() or 1


def map_ordered(fn, items, threads: int = 1) -> list:
    """Map fn over items, preserving item order in the result."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
