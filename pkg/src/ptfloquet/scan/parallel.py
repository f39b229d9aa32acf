"""
Deterministic parallel map over independent parameter points.

Results always come back in input order, whatever the worker count, so
scan output does not depend on --threads.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from typing import TypeVar

import structlog
from joblib import Parallel, delayed

from ptfloquet.config import get_settings
from ptfloquet.core.constants import CLASSIFY_DEFAULTS
from ptfloquet.core.model import ModelParams
from ptfloquet.dynamics.propagator import IntegratorConfig, max_im_eps

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """
    Apply fn to every item.

    Args:
        fn: Picklable (module-level) function
        items: Inputs
        threads: Worker processes; <= 1 runs serially in this process

    Returns:
        [fn(item) for item in items], in input order
    """
    work: Sequence[T] = list(items)
    if threads <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    logger.debug("parallel_map", workers=threads, items=len(work))
    return list(Parallel(n_jobs=threads)(delayed(fn)(item) for item in work))


def rate_task(task: tuple[ModelParams, IntegratorConfig]) -> float:
    """max Im(eps) of one point; module-level so worker processes can unpickle it."""
    p, cfg = task
    return max_im_eps(p, cfg)


def default_threshold(omega0: float, tight: bool = False) -> float:
    """Classification threshold in absolute units: settings.threshold * omega0."""
    if tight:
        return CLASSIFY_DEFAULTS["tight_threshold"] * omega0
    return get_settings().threshold * omega0
