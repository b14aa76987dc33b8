"""Ricci curvature of the resampled metric by direct differentiation."""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib.exceptions import ResampleError
from ricci_hessian_lib.geometry._chart import ChartData
from ricci_hessian_lib.geometry._metric import metric_at
from ricci_hessian_lib.geometry._resampled_chart import ResampledChart


logger = logging.getLogger(__name__)

# Positions of x and u among the coordinates (x, x', u, u').
X_INDEX = 0
U_INDEX = 2


def require_resampled(chart: ChartData) -> ResampledChart:
    if chart.resampled is None:
        raise ResampleError(
            "The chart has not been resampled on a uniform (x, u) grid."
        )
    return chart.resampled


def _partials(
    resampled: ResampledChart, values: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Coordinate derivatives of a tensor field, stacked after the two grid
    axes. Derivatives along ``x'`` and ``u'`` vanish."""
    out = np.zeros(values.shape[:2] + (4,) + values.shape[2:])
    out[:, :, X_INDEX] = resampled.d_x(values)
    out[:, :, U_INDEX] = resampled.d_u(values)
    return out


def christoffel_symbols(
    resampled: ResampledChart,
) -> NDArray[np.float64]:
    """Christoffel symbols ``Γ^a_bc`` of the metric on the resampled grid.

    Returns:
        Array of shape ``(nx, nu, 4, 4, 4)`` indexed ``[..., a, b, c]``.
    """
    metric = metric_at(resampled.state).matrix
    inverse = np.linalg.inv(metric)
    dg = _partials(resampled, metric)
    lowered = (
        np.einsum("...bdc->...dbc", dg)
        + np.einsum("...cdb->...dbc", dg)
        - dg
    )
    return 0.5 * np.einsum("...ad,...dbc->...abc", inverse, lowered)


def curvature_oracle_full(chart: ChartData) -> NDArray[np.float64]:
    """Ricci tensor of the 4×4 metric by finite differences.

    ``R_bd = ∂_a Γ^a_bd - ∂_d Γ^a_ba + Γ^a_ae Γ^e_bd - Γ^a_de Γ^e_ba``,
    with all derivatives taken by second-order differences on the
    resampled grid. Nothing depends on ``x'`` or ``u'``.

    Returns:
        Array of shape ``(nx, nu, 4, 4)``.

    Raises:
        ResampleError: If the chart has not been resampled.
    """
    resampled = require_resampled(chart)
    gamma = christoffel_symbols(resampled)
    d_gamma = _partials(resampled, gamma)
    ricci = (
        np.einsum("...aabd->...bd", d_gamma)
        - np.einsum("...daba->...bd", d_gamma)
        + np.einsum("...aae,...ebd->...bd", gamma, gamma)
        - np.einsum("...ade,...eba->...bd", gamma, gamma)
    )
    logger.debug("Curvature oracle evaluated on %s points.", ricci.shape[:2])
    return ricci


def ricci_shortcut(chart: ChartData) -> NDArray[np.float64]:
    """Ricci tensor predicted by the Kähler identity ``ρ = -i∂∂̄ log Π``.

    The real components are ``-½ P_xx``, ``-½ P_xu`` and ``-½ P_uu`` for
    ``P = log Π``, repeated on the block of ``x'`` and ``u'``.

    Returns:
        Array of shape ``(nx, nu, 4, 4)``.

    Raises:
        ResampleError: If the chart has not been resampled.
    """
    resampled = require_resampled(chart)
    p = np.log(resampled.pi)
    p_xx = resampled.d_xx(p)
    p_xu = resampled.d_xu(p)
    p_uu = resampled.d_uu(p)
    ricci = np.zeros(p.shape + (4, 4))
    for offset in (0, 1):
        x, u = X_INDEX + offset, U_INDEX + offset
        ricci[..., x, x] = -0.5 * p_xx
        ricci[..., u, u] = -0.5 * p_uu
        ricci[..., x, u] = ricci[..., u, x] = -0.5 * p_xu
    return ricci
