"""
Thread-pool runner for independent solver starts and harness samples
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence, TypeVar

import numpy as np
import structlog

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def spawn_seeds(seed: int, count: int) -> List[np.random.SeedSequence]:
    """Independent per-task seed sequences derived from one root seed"""
    return np.random.SeedSequence(seed).spawn(count)


class RestartRunner:
    """
    Maps a task over its inputs, serially or on a thread pool.

    Results come back in input order whatever the worker count, so any merge
    done over them is deterministic.
    """

    def __init__(self, workers: int = 1, label: str = "tasks"):
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.workers = workers
        self.label = label

    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        items = list(items)
        logger.debug("runner.start", label=self.label, tasks=len(items), workers=self.workers)
        try:
            if self.workers == 1 or len(items) <= 1:
                results = [fn(item) for item in items]
            else:
                with ThreadPoolExecutor(max_workers=self.workers) as pool:
                    results = list(pool.map(fn, items))
        except Exception as e:
            logger.error("runner.failed", label=self.label, error=str(e))
            raise
        logger.debug("runner.done", label=self.label, tasks=len(results))
        return results

    @staticmethod
    def best_index(results: Sequence[Any], key: Callable[[Any], float]) -> Optional[int]:
        """Index of the largest key; the earliest one wins ties"""
        best, best_value = None, -np.inf
        for i, result in enumerate(results):
            value = key(result)
            if value > best_value:
                best, best_value = i, value
        return best
