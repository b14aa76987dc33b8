"""Coordinates ``(x, u)`` and the potential on a solved grid."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from ricci_hessian_lib._stencils import (
    cumulative_integral,
    interval_integrals,
)
from ricci_hessian_lib.exceptions import PositivityError, ValidationError
from ricci_hessian_lib.evolution import GridField, field_frame
from ricci_hessian_lib.geometry._resampled_chart import ResampledChart


logger = logging.getLogger(__name__)

MIN_SLICES = 4
FORM_NAMES = ("x", "u", "phi")

OneForm = tuple[NDArray[np.float64], NDArray[np.float64]]


@dataclass(slots=True, frozen=True)
class ChartData:
    """The coordinates ``x``, ``u`` and the potential ``φ`` over a grid.

    Attributes:
        field:
            The solved grid.
        x:
            ``x`` over the ``(τ, λ)`` grid, zero at the first node.
        u:
            ``u`` over the ``(τ, λ)`` grid, zero at the first node.
        phi:
            ``φ`` over the ``(τ, λ)`` grid, zero at the first node.
        loop_residuals:
            Largest circulation of ``dx``, ``du`` and ``dφ`` around a grid
            cell, keyed ``"x"``, ``"u"`` and ``"phi"``.
        curl_residuals:
            The same circulations divided by the cell area.
        resampled:
            The chart on a uniform ``(x, u)`` grid, once computed.
    """

    field: GridField
    x: NDArray[np.float64]
    u: NDArray[np.float64]
    phi: NDArray[np.float64]
    loop_residuals: dict[str, float]
    curl_residuals: dict[str, float]
    resampled: ResampledChart | None = None

    @property
    def closedness(self) -> float:
        """The largest loop residual."""
        return max(self.loop_residuals.values())

    def with_resampled(self, resampled: ResampledChart) -> ChartData:
        """Returns a copy carrying ``resampled``."""
        return dataclasses.replace(self, resampled=resampled)

    def to_frames(self) -> dict[str, pd.DataFrame]:
        """Long-format tables ``(tau, lambda, value)`` of ``x``, ``u`` and
        ``φ``."""
        grid = self.field
        return {
            name: field_frame(grid.tau_grid, grid.lambda_grid, values)
            for name, values in zip(FORM_NAMES, (self.x, self.u, self.phi))
        }


def _check_field(field: GridField) -> NDArray[np.float64]:
    if field.n_tau < MIN_SLICES:
        raise ValidationError(
            f"Chart reconstruction needs at least {MIN_SLICES} slices, got "
            f"{field.n_tau}."
        )
    pi = field.pi
    bad = ~(pi > 0)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        tau, lam = float(field.tau_grid[i]), float(field.lambda_grid[j])
        raise PositivityError(
            f"Π = {pi[i, j]:.6g} ≤ 0 at (τ, λ) = ({tau:.6g}, {lam:.6g}).",
            tau=tau,
            lam=lam,
        )
    return pi


def coordinate_forms(field: GridField) -> dict[str, OneForm]:
    """Components ``(a_τ, a_λ)`` of ``dx``, ``du`` and ``dφ``.

    Inverting ``dτ = Q dx + S du``, ``dλ = S dx + B du`` gives::

        Π dx = B dτ - S dλ
        Π du = Q dλ - S dτ
        Π dφ = (τB - λS) dτ + (λQ - τS) dλ

    Raises:
        PositivityError: If ``Π ≤ 0`` somewhere.
    """
    pi = _check_field(field)
    q, s, b = field.q, field.s, field.b
    tau = field.tau_grid[:, np.newaxis]
    lam = field.lambda_grid[np.newaxis, :]
    return {
        "x": (b / pi, -s / pi),
        "u": (-s / pi, q / pi),
        "phi": ((tau * b - lam * s) / pi, (lam * q - tau * s) / pi),
    }


def integrate_form(
    form: OneForm, tau_spacing: float, lambda_spacing: float
) -> NDArray[np.float64]:
    """Integrates a closed one-form from the first grid node.

    The path runs in ``τ`` along the first λ-column and then in ``λ`` along
    each row, with the fourth-order interval rule on every edge.
    """
    a_tau, a_lam = form
    column = cumulative_integral(a_tau[:, 0], tau_spacing)
    rows = cumulative_integral(a_lam, lambda_spacing, axis=1)
    return column[:, np.newaxis] + rows


def cell_circulations(
    form: OneForm, tau_spacing: float, lambda_spacing: float
) -> NDArray[np.float64]:
    """Integrals of a one-form around every grid cell.

    Returns:
        Array of shape ``(n_tau - 1, n_lam - 1)``.
    """
    a_tau, a_lam = form
    along_tau = interval_integrals(a_tau, tau_spacing, axis=0)
    along_lam = interval_integrals(a_lam, lambda_spacing, axis=1)
    return (
        along_tau[:, :-1]
        + along_lam[1:, :]
        - along_tau[:, 1:]
        - along_lam[:-1, :]
    )


def _band(field: GridField) -> int:
    return max(field.edge_bands, default=0)


def reconstruct_coords(field: GridField) -> ChartData:
    """Reconstructs ``x``, ``u`` and ``φ`` by path integration.

    Constants are fixed by ``x = u = φ = 0`` at the first grid node. Loop
    residuals are measured on the cells outside the edge bands of the
    evolution.

    Args:
        field:
            An admissible solved grid with at least four slices.

    Returns:
        The :class:`ChartData` (not yet resampled).

    Raises:
        PositivityError: If ``Π ≤ 0`` somewhere.
        ValidationError: If the grid has fewer than four slices.
    """
    forms = coordinate_forms(field)
    h_tau, h_lam = field.tau_spacing, field.lambda_spacing
    cell_area = abs(h_tau * h_lam)
    band = _band(field)
    values = {}
    loops = {}
    curls = {}
    for name in FORM_NAMES:
        values[name] = integrate_form(forms[name], h_tau, h_lam)
        circulation = cell_circulations(forms[name], h_tau, h_lam)
        last = max(circulation.shape[1] - band, band + 1)
        loop = float(np.max(np.abs(circulation[:, band:last])))
        loops[name] = loop
        curls[name] = loop / cell_area
    logger.info(
        "Chart reconstructed on a %dx%d grid; loop residuals %s.",
        field.n_tau,
        field.n_lam,
        {k: f"{v:.3g}" for k, v in loops.items()},
    )
    return ChartData(
        field=field,
        x=values["x"],
        u=values["u"],
        phi=values["phi"],
        loop_residuals=loops,
        curl_residuals=curls,
    )


def reconstruct_potential(chart: ChartData) -> NDArray[np.float64]:
    """Integrates ``dφ = τ dx + λ du`` over the chart's grid.

    Returns:
        ``φ`` over the ``(τ, λ)`` grid, zero at the first node.
    """
    field = chart.field
    forms = coordinate_forms(field)
    return integrate_form(
        forms["phi"], field.tau_spacing, field.lambda_spacing
    )
