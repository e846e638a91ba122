"""Deterministic first-success search over independent tasks."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def first_success(fn: Callable[[T], R | None], tasks: Sequence[T], threads: int = 1) -> R | None:
    """Result of the earliest task (in order) whose ``fn`` is not None.

    With ``threads > 1`` the tasks run in worker processes; ``fn`` and the
    tasks must pickle.  The answer is the same as the sequential one.
    """
    if threads <= 1 or len(tasks) <= 1:
        for t in tasks:
            r = fn(t)
            if r is not None:
                return r
        return None
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, t) for t in tasks]
        for fut in futures:
            r = fut.result()
            if r is not None:
                for other in futures:
                    other.cancel()
                return r
    return None
