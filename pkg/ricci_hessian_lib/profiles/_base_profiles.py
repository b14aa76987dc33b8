"""Closed forms of the unmodified coefficient families and their poles."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib.profiles._profile_family import (
    ProfileFamily,
    ContinuationKind,
)
from ricci_hessian_lib.profiles._continuation import (
    AlphaTriple,
    continuation_derivatives,
)


def _const2(t: NDArray[np.float64], _: float) -> AlphaTriple:
    zeros = np.zeros_like(t)
    return np.full_like(t, 2.0), zeros, zeros.copy()


def _reciprocal(t: NDArray[np.float64], _: float) -> AlphaTriple:
    return 2.0 / t, -2.0 / t**2, 4.0 / t**3


def _tanh(t: NDArray[np.float64], _: float) -> AlphaTriple:
    tanh = np.tanh(t)
    with np.errstate(over="ignore"):
        sech2 = 1.0 / np.cosh(t) ** 2
    return 2.0 * tanh, 2.0 * sech2, -4.0 * sech2 * tanh


def _coth(t: NDArray[np.float64], _: float) -> AlphaTriple:
    coth = 1.0 / np.tanh(t)
    with np.errstate(over="ignore"):
        csch2 = 1.0 / np.sinh(t) ** 2
    return 2.0 * coth, -2.0 * csch2, 4.0 * csch2 * coth


def _cot(t: NDArray[np.float64], _: float) -> AlphaTriple:
    cot = 1.0 / np.tan(t)
    csc2 = 1.0 / np.sin(t) ** 2
    return 2.0 * cot, -2.0 * csc2, 4.0 * csc2 * cot


def _eps(t: NDArray[np.float64], param: float) -> AlphaTriple:
    return continuation_derivatives(  # type: ignore[return-value]
        ContinuationKind.EPS_FAMILY, param, t
    )


def _t(t: NDArray[np.float64], param: float) -> AlphaTriple:
    return continuation_derivatives(  # type: ignore[return-value]
        ContinuationKind.T_FAMILY, param, t
    )


_BASE_ALPHAS: dict[
    ProfileFamily, Callable[[NDArray[np.float64], float], AlphaTriple]
] = {
    ProfileFamily.CONST2: _const2,
    ProfileFamily.RECIPROCAL: _reciprocal,
    ProfileFamily.TANH: _tanh,
    ProfileFamily.COTH: _coth,
    ProfileFamily.COT: _cot,
    ProfileFamily.EPS: _eps,
    ProfileFamily.T: _t,
}


def base_alpha(
    family: ProfileFamily, param: float, t: NDArray[np.float64]
) -> AlphaTriple:
    """Evaluates ``(α, α', α'')`` of an unmodified family at ``t``.

    The caller is responsible for keeping ``t`` away from poles.
    """
    return _BASE_ALPHAS[family](np.asarray(t, dtype=float), param)


def pole_period(family: ProfileFamily, param: float) -> float | None:
    """Returns the spacing of the poles of a periodic family.

    ``None`` is returned for families with finitely many poles.
    """
    if family is ProfileFamily.COT:
        return math.pi
    if family is ProfileFamily.EPS and param < 0:
        return math.pi / math.sqrt(-param)
    return None


def isolated_poles(family: ProfileFamily, param: float) -> list[float]:
    """Returns the poles of a non-periodic family, in the base variable."""
    if family in (ProfileFamily.RECIPROCAL, ProfileFamily.COTH):
        return [0.0]
    if family is ProfileFamily.EPS and param >= 0:
        return [0.0]
    if family is ProfileFamily.T and param < 0:
        return [0.5 * math.log(-param)]
    return []


def base_poles_in(
    family: ProfileFamily, param: float, lower: float, upper: float
) -> list[float]:
    """Returns the sorted poles in the closed base-variable window."""
    period = pole_period(family, param)
    if period is None:
        poles = isolated_poles(family, param)
        return [p for p in poles if lower <= p <= upper]
    first = math.ceil(lower / period)
    last = math.floor(upper / period)
    return [k * period for k in range(first, last + 1)]


def distance_to_base_pole(
    family: ProfileFamily, param: float, t: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Distance from each ``t`` to the nearest pole (``inf`` if none)."""
    t = np.asarray(t, dtype=float)
    period = pole_period(family, param)
    if period is not None:
        return np.abs(t - period * np.round(t / period))
    distance = np.full(t.shape, np.inf)
    for pole in isolated_poles(family, param):
        distance = np.minimum(distance, np.abs(t - pole))
    return distance
