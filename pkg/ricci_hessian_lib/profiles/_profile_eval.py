"""Evaluation of coefficient profiles."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Any

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import Real
from ricci_hessian_lib.exceptions import DomainError
from ricci_hessian_lib.profiles._profile_params import ProfileParams
from ricci_hessian_lib.profiles._base_profiles import (
    base_alpha,
    distance_to_base_pole,
)
from ricci_hessian_lib.profiles._continuation import POLE_GUARD


@dataclass(slots=True, frozen=True)
class ProfileEval:
    """Values of ``α``, ``F``, ``ψ`` and ``ε`` and their derivatives at a
    point (or an array of points).

    For genuine profiles the fields satisfy ``α'' + αα' = 0``,
    ``2α' + α² = 4ε``, ``F'' = -Fα'`` and ``ψ' = 1/α²``.

    Attributes:
        alpha: ``α``.
        alpha1: ``α'``.
        alpha2: ``α''``.
        F: ``F``.
        F1: ``F'``.
        F2: ``F''``.
        psi: ``ψ``; infinite where ``α`` vanishes and ``ε ≠ 0``.
        eps: ``ε``.
    """

    alpha: Real
    alpha1: Real
    alpha2: Real
    F: Real
    F1: Real
    F2: Real
    psi: Real
    eps: Real

    @classmethod
    def from_values(
        cls,
        alpha: float,
        alpha1: float = 0.0,
        F: float = 0.0,
        F1: float = 0.0,
        psi: float = math.nan,
    ) -> ProfileEval:
        """Creates an evaluation from raw values.

        Second derivatives and ``ε`` are filled in from ``α'' = -αα'``,
        ``F'' = -Fα'`` and ``4ε = 2α' + α²``. Useful for pointwise jet
        computations that do not need a full profile.
        """
        return cls(
            alpha=alpha,
            alpha1=alpha1,
            alpha2=-alpha * alpha1,
            F=F,
            F1=F1,
            F2=-F * alpha1,
            psi=psi,
            eps=(2.0 * alpha1 + alpha * alpha) / 4.0,
        )

    def to_dict(self) -> dict[str, Any]:
        """Returns the fields as a JSON-friendly dictionary."""
        return {
            key: (
                np.asarray(value).tolist()
                if np.ndim(value)
                else float(value)
            )
            for key, value in asdict(self).items()
        }


def _closed_forms(
    tau: NDArray[np.float64],
    alpha: NDArray[np.float64],
    alpha1: NDArray[np.float64],
    alpha2: NDArray[np.float64],
    theta: float,
    kappa: float,
    eps: float,
) -> tuple[NDArray[np.float64], ...]:
    with np.errstate(divide="ignore", invalid="ignore"):
        if eps != 0:
            scale = 4.0 * eps
            F = (theta * (2.0 - tau * alpha) + scale * kappa * alpha) / scale
            F1 = (
                theta * (-alpha - tau * alpha1) + scale * kappa * alpha1
            ) / scale
            F2 = (
                theta * (-2.0 * alpha1 - tau * alpha2)
                + scale * kappa * alpha2
            ) / scale
            psi = (tau - 2.0 / alpha) / scale
        else:
            F = kappa * alpha - 2.0 * theta / (3.0 * alpha**2)
            F1 = kappa * alpha1 + 4.0 * theta * alpha1 / (3.0 * alpha**3)
            F2 = kappa * alpha2 + (4.0 * theta / 3.0) * (
                alpha2 / alpha**3 - 3.0 * alpha1**2 / alpha**4
            )
            psi = 2.0 / (3.0 * alpha**3)
    return F, F1, F2, psi


def eval_profile(params: ProfileParams, tau: Real) -> ProfileEval:
    """Evaluates a profile and all derived quantities at ``tau``.

    ``α`` comes from the closed form of the family (after the affine
    modification), and ``F``, ``ψ`` from

    * ``4εF = θ(2 - τα) + 4εκα`` and ``4εψ = τ - 2/α`` if ``ε ≠ 0``;
    * ``F = κα - 2θ/(3α²)`` and ``3ψ = 2/α³`` if ``ε = 0``.

    All derivatives are analytic. For the continuation families the
    returned ``ε`` is computed as ``(2α' + α²)/4``.

    Args:
        params:
            The profile.
        tau:
            Evaluation point or array of points.

    Returns:
        A :class:`ProfileEval` whose fields have the shape of ``tau``.

    Raises:
        DomainError:
            If some ``tau`` is within ``1e-8`` (in the unmodified variable)
            of a pole of ``α``.
    """
    tau_array = np.asarray(tau, dtype=float)
    c, p = params.affine_c, params.affine_p
    t = c * (tau_array - p)
    distance = distance_to_base_pole(params.family, params.param, t)
    too_close = distance < POLE_GUARD
    if np.any(too_close):
        offending = float(np.atleast_1d(tau_array)[np.ravel(too_close)][0])
        raise DomainError(
            f"tau={offending:.17g} is at or within {POLE_GUARD} of a pole "
            f"of the {params.family.value} profile."
        )
    a, a1, a2 = base_alpha(params.family, params.param, t)
    alpha = c * np.asarray(a)
    alpha1 = c**2 * np.asarray(a1)
    alpha2 = c**3 * np.asarray(a2)
    F, F1, F2, psi = _closed_forms(
        tau_array,
        alpha,
        alpha1,
        alpha2,
        params.theta,
        params.kappa,
        params.eps,
    )
    if params.family.is_continuation:
        eps = (2.0 * alpha1 + alpha * alpha) / 4.0
    else:
        eps = np.full(tau_array.shape, params.eps)
    values = (alpha, alpha1, alpha2, F, F1, F2, psi, eps)
    if tau_array.ndim == 0:
        return ProfileEval(*(float(v) for v in values))
    return ProfileEval(*values)
