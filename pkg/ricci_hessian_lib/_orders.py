"""Observed convergence orders."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray


def observed_orders(
    errors: Sequence[float], spacings: Sequence[float]
) -> NDArray[np.float64]:
    """Observed orders between consecutive refinement levels.

    The order between levels ``k - 1`` and ``k`` is
    ``log(e[k-1] / e[k]) / log(h[k-1] / h[k])``. The first entry has no
    predecessor and is NaN, as is any entry involving a non-positive or
    non-finite error.

    Args:
        errors:
            Error measures, one per level.
        spacings:
            Grid spacings, one per level.

    Returns:
        Array of the same length as ``errors``.
    """
    e = np.asarray(errors, dtype=float)
    h = np.asarray(spacings, dtype=float)
    orders = np.full(e.shape, np.nan)
    for k in range(1, e.size):
        valid = (
            np.isfinite(e[k - 1])
            and np.isfinite(e[k])
            and e[k - 1] > 0
            and e[k] > 0
            and h[k - 1] != h[k]
        )
        if valid:
            orders[k] = np.log(e[k - 1] / e[k]) / np.log(h[k - 1] / h[k])
    return orders
