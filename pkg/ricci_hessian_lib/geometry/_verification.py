"""Verification of the special Ricci-Hessian equation on a chart."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from ricci_hessian_lib._stencils import derivative4
from ricci_hessian_lib.evolution import field_frame
from ricci_hessian_lib.profiles import (
    ProfileParams,
    check_tau_range,
    eval_profile,
)
from ricci_hessian_lib.geometry._chart import ChartData
from ricci_hessian_lib.geometry._curvature_oracle import (
    X_INDEX,
    U_INDEX,
    require_resampled,
    curvature_oracle_full,
    ricci_shortcut,
)


logger = logging.getLogger(__name__)

DEFAULT_ZERO_THRESHOLD = 1e-8


class FieldStatistics(NamedTuple):
    """Spread of a field that should be constant.

    Attributes:
        mean:
            Mean value.
        max_deviation:
            Largest distance from the mean.
        relative_deviation:
            ``(max - min) / (1 + |mean|)``.
    """

    mean: float
    max_deviation: float
    relative_deviation: float


def field_statistics(values: NDArray[np.float64]) -> FieldStatistics:
    """Computes the :class:`FieldStatistics` of an array."""
    mean = float(np.mean(values))
    return FieldStatistics(
        mean=mean,
        max_deviation=float(np.max(np.abs(values - mean))),
        relative_deviation=float(
            (np.max(values) - np.min(values)) / (1.0 + abs(mean))
        ),
    )


def _max_abs(values: NDArray[np.float64]) -> float:
    return float(np.max(np.abs(values)))


@dataclass(slots=True, frozen=True)
class GeometryReport:
    """Outcome of :func:`verify_ricci_hessian`.

    Field arrays live on the resampled ``(x, u)`` grid, guard cells
    included; scalar summaries are taken over the interior.

    Attributes:
        x:
            The ``x`` axis.
        u:
            The ``u`` axis.
        guard:
            Number of guard cells on each side.
        rh_residual:
            The three Hermitian components ``R1``, ``R2``, ``R3`` of
            ``α∇dτ + r - σg``, doubled, with shape ``(3, nx, nu)``.
        rh_residual_max:
            Max-norm of ``rh_residual``.
        sigma_field:
            ``σ = -(Qα' + F')/2``.
        s_field:
            The scalar curvature ``s = -Δ log Π``.
        y_field:
            ``Y = ∂_x log Π``.
        sigma_check_max:
            Max-norm of ``4σ - Yα - s``.
        theta_field:
            ``θ = (αs + 4εY)/2``.
        kappa_field:
            ``κ = (θτ - s)/(4ε) - Q``, which equals ``θψ + Y/α - Q`` and
            stays finite where ``α`` vanishes. Profiles with ``ε = 0`` use the
            latter form; ``α`` has no zeros there.
        theta:
            Spread of ``θ``.
        kappa:
            Spread of ``κ``.
        mixed_partial_max:
            Max-norm of ``Q_u - S_x`` and ``S_u - B_x``.
        min_q:
            Smallest ``Q`` on the solved grid.
        min_pi:
            Smallest ``Π`` on the solved grid.
        min_abs_q_lam:
            Smallest ``|Q_λ|`` on the solved grid.
        min_hessian_norm:
            Smallest ``|α| max(|Q_x|, |Q_u|, |S_u|)``.
        zero_fraction:
            Fraction of points where the previous quantity is below the
            zero threshold.
        closedness:
            Loop residuals of the chart.
        potential_residuals:
            See :meth:`ResampledChart.potential_residuals`.
        smoke_residual:
            Max-norm of ``2r(v, ·) + dY``.
        oracle_mismatch:
            Max-norm of the difference between the directly computed Ricci
            tensor and the Kähler prediction, if requested.
    """

    x: NDArray[np.float64]
    u: NDArray[np.float64]
    guard: int
    rh_residual: NDArray[np.float64]
    rh_residual_max: float
    sigma_field: NDArray[np.float64]
    s_field: NDArray[np.float64]
    y_field: NDArray[np.float64]
    sigma_check_max: float
    theta_field: NDArray[np.float64]
    kappa_field: NDArray[np.float64]
    theta: FieldStatistics
    kappa: FieldStatistics
    mixed_partial_max: float
    min_q: float
    min_pi: float
    min_abs_q_lam: float
    min_hessian_norm: float
    zero_fraction: float
    closedness: dict[str, float] = field(default_factory=dict)
    potential_residuals: dict[str, float] = field(default_factory=dict)
    smoke_residual: float = 0.0
    oracle_mismatch: float | None = None

    @property
    def all_finite(self) -> bool:
        """Whether every scalar entry of the report is finite."""
        values = [
            v for v in _flatten(self.to_dict()) if isinstance(v, float)
        ]
        return bool(np.all(np.isfinite(values)))

    def fields(self) -> dict[str, NDArray[np.float64]]:
        """The reported fields by name."""
        return {
            "R1": self.rh_residual[0],
            "R2": self.rh_residual[1],
            "R3": self.rh_residual[2],
            "sigma": self.sigma_field,
            "s": self.s_field,
            "Y": self.y_field,
            "theta": self.theta_field,
            "kappa": self.kappa_field,
        }

    def to_frames(self) -> dict[str, pd.DataFrame]:
        """Long-format tables ``(x, u, value)``, one per field."""
        return {
            name: field_frame(self.x, self.u, values, columns=("x", "u"))
            for name, values in self.fields().items()
        }

    def to_dict(self) -> dict[str, Any]:
        """Returns the scalar summary as a JSON-friendly dictionary."""
        return {
            "rh_residual": self.rh_residual_max,
            "sigma_check": self.sigma_check_max,
            "theta": self.theta._asdict(),
            "kappa": self.kappa._asdict(),
            "mixed_partials": self.mixed_partial_max,
            "positivity": {"min_q": self.min_q, "min_pi": self.min_pi},
            "nondegeneracy": {
                "min_abs_q_lam": self.min_abs_q_lam,
                "min_hessian_norm": self.min_hessian_norm,
                "zero_fraction": self.zero_fraction,
            },
            "closedness": dict(self.closedness),
            "potential_residuals": dict(self.potential_residuals),
            "smoke_residual": self.smoke_residual,
            "oracle_mismatch": self.oracle_mismatch,
        }


def _flatten(data: Any):
    if isinstance(data, dict):
        for value in data.values():
            yield from _flatten(value)
    else:
        yield data


def verify_ricci_hessian(
    chart: ChartData,
    profile: ProfileParams,
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD,
    with_curvature_oracle: bool = False,
) -> GeometryReport:
    """Checks ``α∇dτ + r = σg`` and its consequences on a resampled chart.

    Every derivative is a finite difference of the resampled fields; the
    reduced system is never used. With ``P = log Π``::

        R1 = α Q_x - P_xx - 2σQ
        R2 = α Q_u - P_xu - 2σS
        R3 = α S_u - P_uu - 2σB

    where ``σ = -(Qα' + F')/2``. The scalar curvature is
    ``s = -Δ P`` with
    ``Δf = Π⁻¹ [∂_x(B f_x - S f_u) + ∂_u(Q f_u - S f_x)]``, ``Y = P_x``, and
    ``θ``, ``κ`` should be constant.

    Args:
        chart:
            A chart carrying its resampled grid.
        profile:
            The coefficient profile.
        zero_threshold:
            Relative threshold below which ``|α|‖∇dτ‖`` counts as zero.
        with_curvature_oracle:
            Whether to compare the Kähler prediction of the Ricci tensor
            with a direct computation.

    Returns:
        The :class:`GeometryReport`.

    Raises:
        ResampleError: If the chart has not been resampled.
        DomainError: If the chart's τ-range reaches a pole of ``α``.
    """
    r = require_resampled(chart)
    check_tau_range(profile, float(np.min(r.tau)), float(np.max(r.tau)))
    prof = eval_profile(profile, r.tau)
    alpha = np.asarray(prof.alpha)
    q, s, b = r.q, r.s, r.b
    pi = r.pi
    p = np.log(pi)

    q_x, q_u = r.d_x(q), r.d_u(q)
    s_x, s_u = r.d_x(s), r.d_u(s)
    b_x = r.d_x(b)
    p_x, p_u = r.d_x(p), r.d_u(p)
    p_xx, p_xu, p_uu = r.d_xx(p), r.d_xu(p), r.d_uu(p)

    sigma = -(q * prof.alpha1 + prof.F1) / 2.0
    rh = np.stack(
        [
            alpha * q_x - p_xx - 2.0 * sigma * q,
            alpha * q_u - p_xu - 2.0 * sigma * s,
            alpha * s_u - p_uu - 2.0 * sigma * b,
        ]
    )
    laplacian = (
        r.d_x(b * p_x - s * p_u) + r.d_u(q * p_u - s * p_x)
    ) / pi
    scalar = -laplacian
    y = p_x
    theta = (alpha * scalar + 4.0 * prof.eps * y) / 2.0
    if profile.eps != 0:
        kappa = (theta * r.tau - scalar) / (4.0 * profile.eps) - q
    else:
        kappa = theta * prof.psi + y / alpha - q

    hessian = np.abs(alpha) * np.maximum(
        np.abs(q_x), np.maximum(np.abs(q_u), np.abs(s_u))
    )
    interior_hessian = r.interior(hessian)
    scale = max(
        _max_abs(r.interior(q)),
        _max_abs(r.interior(s)),
        _max_abs(r.interior(b)),
    )
    zero_fraction = float(
        np.mean(interior_hessian < zero_threshold * scale)
    )

    grid = chart.field
    q_lam = derivative4(grid.q, grid.lambda_spacing, axis=1)

    if with_curvature_oracle:
        ricci = curvature_oracle_full(chart)
        mismatch = np.moveaxis(ricci - ricci_shortcut(chart), (0, 1), (-2, -1))
        oracle_mismatch = _max_abs(r.interior(mismatch))
        r_vx = ricci[..., X_INDEX, X_INDEX]
        r_vu = ricci[..., X_INDEX, U_INDEX]
    else:
        oracle_mismatch = None
        r_vx, r_vu = -0.5 * p_xx, -0.5 * p_xu
    smoke = max(
        _max_abs(r.interior(2.0 * r_vx + r.d_x(y))),
        _max_abs(r.interior(2.0 * r_vu + r.d_u(y))),
    )

    report = GeometryReport(
        x=r.x,
        u=r.u,
        guard=r.guard,
        rh_residual=rh,
        rh_residual_max=_max_abs(r.interior(rh)),
        sigma_field=sigma,
        s_field=scalar,
        y_field=y,
        sigma_check_max=_max_abs(
            r.interior(4.0 * sigma - y * alpha - scalar)
        ),
        theta_field=theta,
        kappa_field=kappa,
        theta=field_statistics(r.interior(theta)),
        kappa=field_statistics(r.interior(kappa)),
        mixed_partial_max=max(
            _max_abs(r.interior(q_u - s_x)),
            _max_abs(r.interior(s_u - b_x)),
        ),
        min_q=float(np.min(grid.q)),
        min_pi=float(np.min(grid.pi)),
        min_abs_q_lam=float(np.min(np.abs(q_lam))),
        min_hessian_norm=float(np.min(interior_hessian)),
        zero_fraction=zero_fraction,
        closedness=dict(chart.loop_residuals),
        potential_residuals=r.potential_residuals(),
        smoke_residual=smoke,
        oracle_mismatch=oracle_mismatch,
    )
    logger.info(
        "Ricci-Hessian residual %.3g, theta spread %.3g, kappa spread %.3g.",
        report.rh_residual_max,
        report.theta.relative_deviation,
        report.kappa.relative_deviation,
    )
    return report
