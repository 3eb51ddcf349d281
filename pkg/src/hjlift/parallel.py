"""First-hit evaluation over canonically ordered tasks.

Searches split their space into disjoint tasks listed in canonical order.
The answer is the hit of the earliest task that has one, whatever the
worker count, so results never depend on scheduling. Workers are threads;
under the GIL this changes wall-clock only.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def first_hit(fn: Callable[[T], R | None], tasks: Iterable[T], workers: int = 1) -> R | None:
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1:
        for task in tasks:
            hit = fn(task)
            if hit is not None:
                return hit
        return None
    tasks = list(tasks)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # waves of `workers` tasks, consumed in task order
        for start in range(0, len(tasks), workers):
            futures = [pool.submit(fn, t) for t in tasks[start : start + workers]]
            for fut in futures:
                hit = fut.result()
                if hit is not None:
                    for other in futures:
                        other.cancel()
                    return hit
    return None
