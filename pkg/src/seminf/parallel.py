"""Order-preserving parallel map used by the search and enumeration code."""

import os
from concurrent.futures import ProcessPoolExecutor


def default_jobs() -> int:
    return os.cpu_count() or 1


def ordered_map(fn, items, jobs: int = 1) -> list:
    """``[fn(x) for x in items]``, optionally spread over worker processes.

    Results always come back in input order, so callers that concatenate
    them get output independent of ``jobs``.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


def split_even(seq, parts: int) -> list:
    """Split ``seq`` into at most ``parts`` contiguous non-empty chunks."""
    seq = list(seq)
    parts = max(1, min(parts, len(seq)))
    size, extra = divmod(len(seq), parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + size + (i < extra)
        out.append(seq[start:stop])
        start = stop
    return [chunk for chunk in out if chunk]
