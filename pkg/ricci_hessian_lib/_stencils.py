"""Finite-difference and quadrature stencils on uniform grids."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray


_CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_FIRST = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_SECOND = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0

# Four-point rules for the integral over one interval.
_INTERIOR_INTERVAL = np.array([-1.0, 13.0, 13.0, -1.0]) / 24.0
_FIRST_INTERVAL = np.array([9.0, 19.0, -5.0, 1.0]) / 24.0


def is_uniform(grid: NDArray[np.float64], rtol: float = 1e-9) -> bool:
    """Returns whether a one-dimensional grid is strictly increasing and
    uniformly spaced."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        return False
    steps = np.diff(grid)
    return bool(
        np.all(steps > 0)
        and np.all(np.abs(steps - steps[0]) <= rtol * abs(steps[0]))
    )


def derivative4(
    values: NDArray[np.float64], spacing: float, axis: int = -1
) -> NDArray[np.float64]:
    """Fourth-order first derivative along ``axis``.

    Interior points use the five-point central stencil. The two points next
    to each edge use fourth-order one-sided stencils, so the result has the
    same shape as the input.

    Args:
        values:
            Samples on a uniform grid. At least five samples are needed
            along ``axis``.
        spacing:
            Grid spacing along ``axis``.
        axis:
            Axis along which to differentiate.

    Returns:
        Array with the same shape as ``values``.

    Raises:
        ValueError: If fewer than five samples are given along ``axis``.
    """
    f = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    n = f.shape[0]
    if n < 5:
        raise ValueError(
            f"At least 5 points are needed for 4th-order stencils, got {n}."
        )
    out = np.empty_like(f)
    out[2:-2] = (
        _CENTRAL[0] * f[:-4]
        + _CENTRAL[1] * f[1:-3]
        + _CENTRAL[3] * f[3:-1]
        + _CENTRAL[4] * f[4:]
    )
    out[0] = np.tensordot(_FIRST, f[:5], axes=1)
    out[1] = np.tensordot(_SECOND, f[:5], axes=1)
    out[-1] = -np.tensordot(_FIRST, f[::-1][:5], axes=1)
    out[-2] = -np.tensordot(_SECOND, f[::-1][:5], axes=1)
    return np.moveaxis(out / spacing, 0, axis)


def interval_integrals(
    values: NDArray[np.float64], spacing: float, axis: int = -1
) -> NDArray[np.float64]:
    """Integrals over each grid interval, fourth-order accurate.

    Each interval uses the cubic through the two interval end points and
    their outer neighbours; the first and last intervals use the four
    nearest samples instead.

    Returns:
        Array with one fewer sample than ``values`` along ``axis``.

    Raises:
        ValueError: If fewer than four samples are given along ``axis``.
    """
    f = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    n = f.shape[0]
    if n < 4:
        raise ValueError(
            f"At least 4 points are needed for 4th-order quadrature, got {n}."
        )
    out = np.empty((n - 1,) + f.shape[1:])
    w = _INTERIOR_INTERVAL
    out[1:-1] = w[0] * f[:-3] + w[1] * f[1:-2] + w[2] * f[2:-1] + w[3] * f[3:]
    out[0] = np.tensordot(_FIRST_INTERVAL, f[:4], axes=1)
    out[-1] = np.tensordot(_FIRST_INTERVAL, f[::-1][:4], axes=1)
    return np.moveaxis(out * spacing, 0, axis)


def cumulative_integral(
    values: NDArray[np.float64], spacing: float, axis: int = -1
) -> NDArray[np.float64]:
    """Running integral from the first sample, fourth-order accurate.

    The first entry along ``axis`` is zero.
    """
    pieces = interval_integrals(values, spacing, axis)
    pieces = np.moveaxis(pieces, axis, 0)
    out = np.zeros((pieces.shape[0] + 1,) + pieces.shape[1:])
    np.cumsum(pieces, axis=0, out=out[1:])
    return np.moveaxis(out, 0, axis)


def gradient2(
    values: NDArray[np.float64], spacing: float, axis: int = -1
) -> NDArray[np.float64]:
    """Second-order first derivative along ``axis``, one-sided at the
    edges."""
    return np.gradient(
        np.asarray(values, dtype=float), spacing, axis=axis, edge_order=2
    )


def second_difference(
    values: NDArray[np.float64], spacing: float, axis: int = -1
) -> NDArray[np.float64]:
    """Second-order second derivative along ``axis``.

    Interior points use the three-point stencil and the edge points the
    four-point one-sided stencil ``(2, -5, 4, -1)``.

    Raises:
        ValueError: If fewer than four samples are given along ``axis``.
    """
    f = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    n = f.shape[0]
    if n < 4:
        raise ValueError(
            f"At least 4 points are needed for second differences, got {n}."
        )
    out = np.empty_like(f)
    out[1:-1] = f[:-2] - 2.0 * f[1:-1] + f[2:]
    out[0] = 2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]
    out[-1] = 2.0 * f[-1] - 5.0 * f[-2] + 4.0 * f[-3] - f[-4]
    return np.moveaxis(out / spacing**2, 0, axis)


def sixth_difference(
    values: NDArray[np.float64], axis: int = -1
) -> NDArray[np.float64]:
    """Undivided sixth difference along ``axis``.

    Uses ``(1, -6, 15, -20, 15, -6, 1)`` at every point with three
    neighbours on each side. The three points next to each edge, and
    arrays with fewer than seven samples, get zero.
    """
    f = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    out = np.zeros_like(f)
    if f.shape[0] >= 7:
        out[3:-3] = (
            f[:-6]
            - 6.0 * f[1:-5]
            + 15.0 * f[2:-4]
            - 20.0 * f[3:-3]
            + 15.0 * f[4:-2]
            - 6.0 * f[5:-1]
            + f[6:]
        )
    return np.moveaxis(out, 0, axis)
