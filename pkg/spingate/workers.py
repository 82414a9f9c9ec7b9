"""
Process fan-out for independent evaluations (truth-table rows, sweep points).

Results come back in input order whatever the completion order, so
reports do not depend on the worker count.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(
    fn: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None
) -> List[R]:
    """Apply ``fn`` to every item, in worker processes when ``workers`` > 1.

    ``fn`` must be a module-level function so it can be pickled.
    """
    if not items:
        return []
    if workers is None or workers <= 1 or len(items) == 1:
        return [fn(item) for item in items]

    workers = min(workers, len(items))
    results: List[Optional[R]] = [None] * len(items)
    logger.debug("Fanning out %d evaluations over %d processes", len(items), workers)

    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(fn, item): index for index, item in enumerate(items)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()

    return results  # type: ignore[return-value]
