"""Worker count and parallel maps.

The number of workers is capped by the ``SRH_THREADS`` environment variable.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from ricci_hessian_lib.exceptions import ConfigError

# pylint: disable=invalid-name
T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV_VAR = "SRH_THREADS"
_DEFAULT_MAX_WORKERS = 4


def worker_count() -> int:
    """Returns the number of workers allowed for parallel maps.

    Raises:
        ConfigError: If ``SRH_THREADS`` is set to something other than a
            positive integer.
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return max(1, min(_DEFAULT_MAX_WORKERS, os.cpu_count() or 1))
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(
            f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}."
        ) from e
    if value < 1:
        raise ConfigError(
            f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}."
        )
    return value


def parallel_map(func: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Applies ``func`` to every item, preserving order.

    Runs sequentially when a single worker is allowed.
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
