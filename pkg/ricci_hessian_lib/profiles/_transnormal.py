"""Exact λ-independent solutions."""

from __future__ import annotations

import numpy as np

from ricci_hessian_lib._state_z import Real, StateZ
from ricci_hessian_lib.exceptions import ConfigError
from ricci_hessian_lib.profiles._profile_family import ProfileFamily
from ricci_hessian_lib.profiles._profile_params import ProfileParams
from ricci_hessian_lib.profiles._profile_eval import eval_profile


def has_constant_alpha(params: ProfileParams) -> bool:
    """Whether ``α`` is constant (the gradient Ricci soliton case)."""
    return params.family is ProfileFamily.CONST2 or (
        params.family is ProfileFamily.T and params.param == 0
    )


def transnormal_solution(
    params: ProfileParams,
    tau: Real,
    shear: float = 0.0,
    b0: float = 1.0,
) -> StateZ:
    """Returns the exact solution of the reduced system in which ``Q``
    depends on ``τ`` only.

    With ``shear = 0`` the solution is ``Q = -F'/α'``, ``S = 0``,
    ``B = b0`` and ``G = 0``. When ``α`` is constant ``F'`` must vanish
    (``θ = 0``) and ``Q = exp(2c (τ - p)) - κ`` instead, where ``α = 2c``.
    A nonzero shear ``m`` applies the coordinate change ``x̃ = x + m u``,
    which gives ``S = -mQ``, ``B = b0 + m²Q`` and ``G = -mF``. In every case
    ``Π = b0 Q``.

    These solutions have ``Q_λ = 0``, so they fail the nondegeneracy
    condition of the initial data, but they are exact and useful to test
    the geometric reconstruction.

    Args:
        params:
            The profile.
        tau:
            Point or array of points.
        shear:
            The shear ``m``.
        b0:
            Value of ``B`` for ``shear = 0``.

    Returns:
        A :class:`StateZ` with the shape of ``tau``. It is admissible where
        ``Q > 0`` if ``b0 > 0``.

    Raises:
        ConfigError: If ``α`` is constant and ``θ ≠ 0``.
        DomainError: If ``tau`` is at a pole.
    """
    prof = eval_profile(params, tau)
    tau_array = np.asarray(tau, dtype=float)
    if has_constant_alpha(params):
        if params.theta != 0:
            raise ConfigError(
                "Constant coefficient profiles only have λ-independent "
                f"solutions for theta = 0, got theta={params.theta}."
            )
        c, p = params.affine_c, params.affine_p
        q = np.exp(2.0 * c * (tau_array - p)) - params.kappa
    else:
        q = -np.asarray(prof.F1) / np.asarray(prof.alpha1)
    m = shear
    f = np.asarray(prof.F)
    values = (q, -m * q, b0 + m * m * q, -m * f + 0.0 * q)
    if tau_array.ndim == 0:
        return StateZ(*(float(v) for v in values))
    return StateZ(*values)
