"""Arithmetic of truncated bivariate power series.

A series of order ``N`` is a square array ``c`` of shape ``(N+1, N+1)``
where ``c[i, j]`` multiplies ``s^i l^j`` and entries with ``i + j > N``
vanish.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray
from scipy.signal import convolve2d


def triangle_mask(order: int, degree: int | None = None) -> NDArray[np.bool_]:
    """Mask of the entries with total degree at most ``degree`` (defaults to
    ``order``)."""
    degree = order if degree is None else degree
    i, j = np.indices((order + 1, order + 1))
    return i + j <= degree


def truncate(c: NDArray[np.float64], degree: int) -> NDArray[np.float64]:
    """Zeros the entries of total degree larger than ``degree``."""
    order = c.shape[0] - 1
    return np.where(triangle_mask(order, degree), c, 0.0)


def multiply(
    a: NDArray[np.float64], b: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Product of two series, truncated to their common order."""
    n = a.shape[0]
    full = convolve2d(a, b)[:n, :n]
    return truncate(full, n - 1)


def d_tau(c: NDArray[np.float64]) -> NDArray[np.float64]:
    """Derivative with respect to the first variable."""
    out = np.zeros_like(c)
    out[:-1, :] = np.arange(1, c.shape[0])[:, np.newaxis] * c[1:, :]
    return out


def d_lam(c: NDArray[np.float64]) -> NDArray[np.float64]:
    """Derivative with respect to the second variable."""
    out = np.zeros_like(c)
    out[:, :-1] = np.arange(1, c.shape[1])[np.newaxis, :] * c[:, 1:]
    return out


def coefficient_of_product(
    a: NDArray[np.float64], b: NDArray[np.float64], i: int, j: int
) -> float:
    """Coefficient ``(i, j)`` of the product ``a b``."""
    return float(np.sum(a[: i + 1, : j + 1] * b[i::-1, j::-1]))


def univariate_in_tau(
    coefficients: NDArray[np.float64], order: int
) -> NDArray[np.float64]:
    """Embeds a series in the first variable as a bivariate one."""
    out = np.zeros((order + 1, order + 1))
    size = min(order + 1, len(coefficients))
    out[:size, 0] = coefficients[:size]
    return out
