"""Taylor coefficients of the profile."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib.profiles import ProfileEval


def profile_taylor_coefficients(
    prof: ProfileEval, order: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Taylor coefficients of ``α`` and ``F`` about the evaluation point.

    Only ``α``, ``α'``, ``F`` and ``F'`` at the point are used; higher
    coefficients follow from ``α'' = -αα'`` and ``F'' = -Fα'``::

        (k+2)(k+1) a[k+2] = -Σ_j a[j] (k-j+1) a[k-j+1]
        (k+2)(k+1) f[k+2] = -Σ_j f[j] (k-j+1) a[k-j+1]

    Args:
        prof:
            Scalar profile evaluation.
        order:
            Highest degree.

    Returns:
        Arrays ``(a, f)`` of length ``order + 1``.
    """
    size = max(order + 1, 2)
    a = np.zeros(size)
    f = np.zeros(size)
    a[0], a[1] = float(prof.alpha), float(prof.alpha1)
    f[0], f[1] = float(prof.F), float(prof.F1)
    for k in range(size - 2):
        derivative = np.arange(k + 1, 0, -1) * a[1 : k + 2][::-1]
        a[k + 2] = -np.dot(a[: k + 1], derivative) / ((k + 2) * (k + 1))
        f[k + 2] = -np.dot(f[: k + 1], derivative) / ((k + 2) * (k + 1))
    return a[: order + 1], f[: order + 1]


def derivative_coefficients(
    coefficients: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Coefficients of the derivative of a univariate series, padded with a
    trailing zero."""
    c = np.asarray(coefficients, dtype=float)
    out = np.zeros_like(c)
    out[:-1] = np.arange(1, c.size) * c[1:]
    return out
