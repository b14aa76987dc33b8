"""Pole-free intervals of profiles."""

from __future__ import annotations

import math

import numpy as np

from ricci_hessian_lib._state_z import Real
from ricci_hessian_lib.exceptions import DomainError
from ricci_hessian_lib.profiles._profile_params import ProfileParams
from ricci_hessian_lib.profiles._base_profiles import (
    base_poles_in,
    distance_to_base_pole,
    isolated_poles,
    pole_period,
)
from ricci_hessian_lib.profiles._continuation import POLE_GUARD


Interval = tuple[float, float]


def _to_base(params: ProfileParams, tau: float) -> float:
    return params.affine_c * (tau - params.affine_p)


def _from_base(params: ProfileParams, t: float) -> float:
    return params.affine_p + t / params.affine_c


def poles_in(
    params: ProfileParams, window: tuple[float, float]
) -> list[float]:
    """Returns the sorted poles of ``α`` in the closed window, in the current
    frame."""
    lower, upper = sorted(_to_base(params, tau) for tau in window)
    poles = base_poles_in(params.family, params.param, lower, upper)
    return sorted(_from_base(params, t) for t in poles)


def valid_intervals(
    params: ProfileParams, window: tuple[float, float] = (-10.0, 10.0)
) -> list[Interval]:
    """Returns the maximal pole-free open intervals that meet ``window``.

    Families with finitely many poles give all their intervals (unbounded
    ones have infinite end points). Families with infinitely many poles
    (``cot`` and the ``ε``-family with ``ε < 0``) give only the intervals
    that meet the window.

    Args:
        params:
            The profile.
        window:
            Closed window ``(lower, upper)`` in the current frame.

    Returns:
        Sorted list of ``(lower, upper)`` tuples.
    """
    lower, upper = min(window), max(window)
    period = pole_period(params.family, params.param)
    if period is None:
        base = isolated_poles(params.family, params.param)
        poles = sorted(_from_base(params, t) for t in base)
        breakpoints = [-math.inf, *poles, math.inf]
    else:
        margin = period / abs(params.affine_c)
        breakpoints = poles_in(params, (lower - margin, upper + margin))
    intervals = list(zip(breakpoints[:-1], breakpoints[1:]))
    return [(a, b) for a, b in intervals if a < upper and b > lower]


def distance_to_nearest_pole(params: ProfileParams, tau: Real) -> Real:
    """Distance from ``tau`` to the nearest pole, in the current frame.

    Pole-free profiles give ``inf``.
    """
    tau_array = np.asarray(tau, dtype=float)
    t = _to_base(params, tau_array)  # type: ignore[arg-type]
    distance = distance_to_base_pole(params.family, params.param, t)
    distance = distance / abs(params.affine_c)
    if tau_array.ndim == 0:
        return float(distance)
    return distance


def interval_containing(params: ProfileParams, tau: float) -> Interval:
    """Returns the valid interval that contains ``tau``.

    Raises:
        DomainError: If ``tau`` is at or within ``1e-8`` (base variable) of
            a pole.
    """
    guard = POLE_GUARD / abs(params.affine_c)
    if distance_to_nearest_pole(params, tau) < guard:
        raise DomainError(
            f"tau={tau} is at or next to a pole of the "
            f"{params.family.value} profile."
        )
    for lower, upper in valid_intervals(params, (tau, tau)):
        if lower < tau < upper:
            return lower, upper
    raise DomainError(f"No valid interval contains tau={tau}.")


def check_tau_range(
    params: ProfileParams, tau0: float, tau1: float
) -> Interval:
    """Checks that the closed range between ``tau0`` and ``tau1`` is
    pole-free.

    Returns:
        The valid interval containing the range.

    Raises:
        DomainError: If the range touches or crosses a pole.
    """
    lower, upper = min(tau0, tau1), max(tau0, tau1)
    interval = interval_containing(params, lower)
    guard = POLE_GUARD / abs(params.affine_c)
    if upper >= interval[1] - guard:
        raise DomainError(
            f"The tau range [{lower}, {upper}] crosses the pole at "
            f"{interval[1]} of the {params.family.value} profile."
        )
    return interval
