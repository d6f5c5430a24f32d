# selberg/utils/parallel.py
"""
Ordered parallel map over a thread pool driven by asyncio.

Results come back in input order no matter which worker finishes first, so
every sweep is reproducible independently of the thread count.
"""

import asyncio
import logging
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


async def _gather_ordered(fn: Callable[[T], R], items: List[T], threads: int) -> List[R]:
    semaphore = asyncio.Semaphore(threads)

    async def _one(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(fn, item)

    # gather preserves order
    return await asyncio.gather(*(_one(item) for item in items))


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    Apply fn to every item, using up to `threads` workers.

    Args:
        fn: Pure function of one item
        items: Inputs
        threads: Worker count; 1 runs inline

    Returns:
        List of results aligned with the inputs
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug(f"Dispatching {len(items)} tasks over {threads} threads")
    return asyncio.run(_gather_ordered(fn, items, threads))
