import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    """Worker count from ``POLYHARM_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("POLYHARM_THREADS", "1")))
    except ValueError:
        return 1


def pmap(func, items):
    items = list(items)
    workers = min(thread_cap(), len(items))
    if workers <= 1:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
