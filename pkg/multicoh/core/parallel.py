"""
Fan-out of independent check tasks.

Checks are pure functions of immutable data, so they can run on a thread pool; results
always come back in submission order so reports are identical for any worker count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar


logger = logging.getLogger(__name__)

T = TypeVar("T")


def fan_out(tasks: Sequence[Callable[[], T]], max_workers: int = 1) -> List[T]:
    """
    Run zero-argument callables and return their results in order.

    With ``max_workers <= 1`` the tasks run inline on the calling thread.
    """
    if max_workers <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]

    logger.debug(f"Running {len(tasks)} tasks on {max_workers} threads")
    with ThreadPoolExecutor(max_workers=max_workers, thread_name_prefix="multicoh-check") as pool:
        futures = [pool.submit(task) for task in tasks]
        return [future.result() for future in futures]
