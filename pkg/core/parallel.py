"""
Bounded parallel map for grid sweeps.

Work items are independent pure computations; results are returned in
input order so reports stay deterministic regardless of the worker count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from core.config import EXPLAB_THREADS

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None
) -> List[R]:
    """
    Apply fn to every item, using at most EXPLAB_THREADS worker threads.

    Args:
        fn: Pure function of one item.
        items: Work items.
        max_workers: Override for the configured cap.

    Returns:
        list: fn(item) for each item, in input order.
    """
    work = list(items)
    workers = min(max_workers or EXPLAB_THREADS, max(1, len(work)))
    if workers <= 1:
        return [fn(item) for item in work]
    logger.debug(f"Mapping {len(work)} items over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, work))
