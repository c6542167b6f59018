import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "ENTANGLYZE_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_VAR, "")
    default = os.cpu_count() or 1
    try:
        n = int(raw) if raw else default
    except ValueError:
        n = default
    return max(1, min(n, default))


def pmap(fn, items):
    """Order-preserving map, threaded when ENTANGLYZE_THREADS allows more than one worker."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
