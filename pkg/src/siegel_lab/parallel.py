"""Order-preserving map over worker processes."""

from concurrent.futures import ProcessPoolExecutor


def parallel_map(func, items, jobs=1, chunksize=8):
    """Like ``list(map(func, items))``; results come back in input order."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=chunksize))
