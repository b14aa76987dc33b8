"""Refinement studies of the geometric verification."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import pandas as pd

from ricci_hessian_lib._orders import observed_orders
from ricci_hessian_lib._parallel import parallel_map
from ricci_hessian_lib.exceptions import ConfigError, DegenerateStudyError
from ricci_hessian_lib.evolution import GridField
from ricci_hessian_lib.profiles import ProfileParams
from ricci_hessian_lib.geometry._chart import reconstruct_coords
from ricci_hessian_lib.geometry._resampling import Rectangle, resample_chart
from ricci_hessian_lib.geometry._verification import (
    GeometryReport,
    verify_ricci_hessian,
)


logger = logging.getLogger(__name__)

MEASURES = (
    "rh_residual",
    "theta_deviation",
    "kappa_deviation",
    "sigma_check",
    "phi_xx",
    "mixed_partials",
)


def _verify_level(
    args: tuple[GridField, ProfileParams, int, bool, Rectangle | None],
) -> tuple[float, GeometryReport, Rectangle]:
    field, profile, n, with_oracle, rectangle = args
    chart = reconstruct_coords(field)
    resampled = resample_chart(chart, n, rectangle=rectangle)
    chart = chart.with_resampled(resampled)
    report = verify_ricci_hessian(
        chart, profile, with_curvature_oracle=with_oracle
    )
    return resampled.spacing, report, resampled.rectangle


def geometry_convergence_study(
    fields: Sequence[GridField],
    profile: ProfileParams,
    resample_sizes: Sequence[int],
    with_curvature_oracle: bool = False,
) -> pd.DataFrame:
    """Verifies a sequence of refined solutions and measures the observed
    orders of the geometric residuals.

    Level ``k`` reconstructs the chart of ``fields[k]``, resamples it with
    ``resample_sizes[k]`` points per axis and verifies it. Every level is
    resampled on the rectangle chosen for the coarsest one, so all levels
    cover the same region. Orders are computed from the resampled
    spacings.

    Args:
        fields:
            Solved grids, coarsest first.
        profile:
            The coefficient profile shared by all grids.
        resample_sizes:
            Resampling size for each level.
        with_curvature_oracle:
            Whether to include the curvature-oracle mismatch.

    Returns:
        A :class:`pandas.DataFrame` with one row per level, the columns
        ``n_lam``, ``n_resample``, ``h``, ``loop``,
        ``rh_residual``, ``theta_deviation``, ``kappa_deviation``,
        ``sigma_check``, ``phi_xx``, ``mixed_partials``,
        ``oracle_mismatch`` and one ``order_<measure>`` column per measure.

    Raises:
        DegenerateStudyError: If fewer than two levels are given.
        ConfigError: If the numbers of fields and sizes differ.
    """
    if len(fields) != len(resample_sizes):
        raise ConfigError(
            f"Got {len(fields)} fields but {len(resample_sizes)} resampling "
            "sizes."
        )
    if len(fields) < 2:
        raise DegenerateStudyError("A study needs at least two levels.")
    coarsest = _verify_level(
        (fields[0], profile, resample_sizes[0], with_curvature_oracle, None)
    )
    rectangle = coarsest[2]
    results = [coarsest] + parallel_map(
        _verify_level,
        [
            (field, profile, n, with_curvature_oracle, rectangle)
            for field, n in zip(fields[1:], resample_sizes[1:])
        ],
    )
    rows = []
    for field, n, (spacing, report, _) in zip(
        fields, resample_sizes, results
    ):
        rows.append(
            {
                "n_lam": field.n_lam,
                "n_resample": n,
                "h": spacing,
                "loop": max(report.closedness.values()),
                "rh_residual": report.rh_residual_max,
                "theta_deviation": report.theta.relative_deviation,
                "kappa_deviation": report.kappa.relative_deviation,
                "sigma_check": report.sigma_check_max,
                "phi_xx": report.potential_residuals["phi_xx"],
                "mixed_partials": report.mixed_partial_max,
                "oracle_mismatch": report.oracle_mismatch,
            }
        )
    table = pd.DataFrame(rows)
    spacings = table["h"].to_numpy()
    for measure in MEASURES:
        table[f"order_{measure}"] = observed_orders(
            table[measure], spacings
        )
    if with_curvature_oracle:
        table["order_oracle_mismatch"] = observed_orders(
            table["oracle_mismatch"], spacings
        )
    logger.info("Geometry convergence study:\n%s", table.to_string())
    return table
