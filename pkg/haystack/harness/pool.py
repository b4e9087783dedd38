"""
Haystack Worker Pool Module

Runs sweep cells one per task. With a single worker everything stays in
the calling process, in submission order; with more, a multiprocessing
pool hands results back in completion order.
"""

import logging
import multiprocessing

from haystack.exceptions import ParameterError

logger = logging.getLogger(__name__)


class WorkerPool:
    """
    Process pool for independent sweep cells.

    Usage:
        with WorkerPool(workers=4) as pool:
            for result in pool.run(run_cell, cells):
                ...

    The task function and its arguments must be picklable when
    workers > 1.
    """

    __slots__ = (
        '_workers',     # int: Process count (1 = in-process)
        '_pool',        # multiprocessing.Pool or None
        '_submitted',   # int: Tasks handed out
        '_completed',   # int: Results received
    )

    def __init__(self, workers=1):
        """
        Args:
            workers: int - Number of processes (>= 1)
        """
        if workers < 1:
            raise ParameterError(f'workers must be >= 1, got {workers}')
        self._workers = workers
        self._pool = None
        self._submitted = 0
        self._completed = 0

    @property
    def workers(self):
        return self._workers

    @property
    def parallel(self):
        return self._workers > 1

    def __enter__(self):
        if self.parallel:
            self._pool = multiprocessing.Pool(self._workers)
            logger.debug('[Pool] Started %d workers', self._workers)
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close(terminate=exc_type is not None)
        return False

    def close(self, terminate=False):
        """
        Shut the pool down.

        Args:
            terminate: bool - Kill outstanding tasks instead of waiting
        """
        if self._pool is None:
            return
        if terminate:
            self._pool.terminate()
        else:
            self._pool.close()
        self._pool.join()
        self._pool = None
        logger.debug('[Pool] Stopped (%d/%d tasks completed)', self._completed, self._submitted)

    def run(self, fn, items):
        """
        Apply fn to every item.

        Args:
            fn: callable - Top-level function (picklable)
            items: list - Task arguments

        Yields:
            fn(item) results; submission order in-process, completion order otherwise
        """
        items = list(items)
        self._submitted += len(items)
        if self._pool is None:
            for item in items:
                result = fn(item)
                self._completed += 1
                yield result
            return
        for result in self._pool.imap_unordered(fn, items):
            self._completed += 1
            yield result

    def get_stats(self):
        """
        Get pool statistics.

        Returns:
            dict: workers, submitted, completed
        """
        return {
            'workers': self._workers,
            'submitted': self._submitted,
            'completed': self._completed,
        }
