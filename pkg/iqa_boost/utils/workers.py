"""
Worker-count resolution shared by native scoring and the experiment runner.
"""

import logging
import os
from typing import Optional

logger = logging.getLogger(__name__)

THREADS_ENV = "IQABOOST_THREADS"


def worker_count(requested: Optional[int] = None) -> int:
    """
    Number of concurrent workers to use.

    Args:
        requested: Explicit cap; overrides the environment when given

    Returns:
        requested, else $IQABOOST_THREADS, else the available CPU count (>= 1)
    """
    if requested is not None:
        return max(1, int(requested))
    raw = os.environ.get(THREADS_ENV, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return max(1, os.cpu_count() or 1)
