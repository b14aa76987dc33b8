"""The Kähler metric in the coordinates ``(x, x', u, u')``."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import Real, StateZ


COORDINATE_NAMES = ("x", "x'", "u", "u'")


class MetricSample(NamedTuple):
    """The metric at a point (or at an array of points).

    Attributes:
        matrix:
            Components in the coordinates ``(x, x', u, u')``, with shape
            ``(..., 4, 4)``.
        pi:
            ``Π = QB - S²``; the determinant of ``matrix`` is ``Π²``.
        positive:
            Sylvester's verdict ``Q > 0`` and ``Π > 0``.
    """

    matrix: NDArray[np.float64]
    pi: Real
    positive: bool | NDArray[np.bool_]


def metric_at(z: StateZ) -> MetricSample:
    """Returns the metric determined by ``(Q, S, B)``.

    The components are::

        [Q  0  S  0]
        [0  Q  0  S]
        [S  0  B  0]
        [0  S  0  B]

    Positive definiteness is decided by the leading principal minors, which
    are ``Q``, ``Q²``, ``QΠ`` and ``Π²``.
    """
    q, s, b = (np.asarray(v, dtype=float) for v in (z.Q, z.S, z.B))
    q, s, b = np.broadcast_arrays(q, s, b)
    matrix = np.zeros(q.shape + (4, 4))
    matrix[..., 0, 0] = matrix[..., 1, 1] = q
    matrix[..., 2, 2] = matrix[..., 3, 3] = b
    matrix[..., 0, 2] = matrix[..., 2, 0] = s
    matrix[..., 1, 3] = matrix[..., 3, 1] = s
    pi = q * b - s * s
    positive = (q > 0) & (pi > 0)
    if q.ndim == 0:
        return MetricSample(matrix, float(pi), bool(positive))
    return MetricSample(matrix, pi, positive)
