"""Order-independent parallel map over a process pool."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def pmap(fn, items, threads: int = 1):
    """``list(map(fn, items))``, fanned out over ``threads`` worker processes.

    Results come back in input order, so any reduction over them is
    independent of scheduling.  ``fn`` must be picklable.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))
