"""
Order-preserving concurrent map for independent computations
(see-saw restarts, sweep rows)
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

import psutil

from src.utils.logger import get_logger

logger = get_logger(__name__)

T = TypeVar('T')
R = TypeVar('R')


class ComputePool:
    """
    Thin wrapper around ThreadPoolExecutor

    Results always come back in input order, so the output of a run does not
    depend on scheduling.
    """

    # Below this many items the work runs inline
    MIN_PARALLEL_ITEMS = 4

    @staticmethod
    def worker_count(items: int) -> int:
        """
        Physical core count (logical if unavailable), capped by the item count
        """
        cores = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True) or 1
        return max(1, min(cores, items))

    @staticmethod
    def map_ordered(fn: Callable[[T], R], items: Sequence[T],
                    max_workers: Optional[int] = None) -> List[R]:
        """
        Apply fn to every item, concurrently when worthwhile

        Args:
            fn: function of one item
            items: inputs
            max_workers: override for the worker count

        Returns:
            [fn(item) for item in items], in input order
        """
        items = list(items)
        if len(items) < ComputePool.MIN_PARALLEL_ITEMS or max_workers == 1:
            return [fn(item) for item in items]
        workers = max_workers or ComputePool.worker_count(len(items))
        logger.debug(f"Running {len(items)} tasks on {workers} workers")
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(fn, items))
