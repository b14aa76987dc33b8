"""Coordinates, potential and metric of a solved grid, and independent
verification of the geometry.

.. autosummary::
    :nosignatures:

    ChartData
    ResampledChart
    reconstruct_coords
    reconstruct_potential
    resample_chart
    MetricSample
    metric_at
    GeometryReport
    FieldStatistics
    verify_ricci_hessian
    curvature_oracle_full
    ricci_shortcut
    geometry_convergence_study

A solved grid gives ``(Q, S, B)`` as functions of ``(τ, λ)``. The
coordinates ``x`` and ``u`` and the potential ``φ`` follow by integrating
closed one-forms; the chart is then resampled on a uniform ``(x, u)`` grid
where every identity is checked by finite differences of the raw fields.
"""

from ._metric import MetricSample, metric_at, COORDINATE_NAMES
from ._resampled_chart import ResampledChart
from ._chart import (
    ChartData,
    reconstruct_coords,
    reconstruct_potential,
    coordinate_forms,
    integrate_form,
    cell_circulations,
)
from ._resampling import resample_chart, largest_centered_rectangle
from ._curvature_oracle import (
    christoffel_symbols,
    curvature_oracle_full,
    ricci_shortcut,
)
from ._verification import (
    FieldStatistics,
    GeometryReport,
    field_statistics,
    verify_ricci_hessian,
)
from ._convergence import geometry_convergence_study


__all__ = [
    "MetricSample",
    "metric_at",
    "COORDINATE_NAMES",
    "ResampledChart",
    "ChartData",
    "reconstruct_coords",
    "reconstruct_potential",
    "coordinate_forms",
    "integrate_form",
    "cell_circulations",
    "resample_chart",
    "largest_centered_rectangle",
    "christoffel_symbols",
    "curvature_oracle_full",
    "ricci_shortcut",
    "FieldStatistics",
    "GeometryReport",
    "field_statistics",
    "verify_ricci_hessian",
    "geometry_convergence_study",
]
