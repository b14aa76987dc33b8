"""Continuation families interpolating between the canonical families.

The ``ε``-family is ``α = 2/β`` with ``β(τ) = τ Σ(ετ²)``, where ``Σ`` is the
analytic continuation of ``tanh(√y)/√y`` with ``Σ(0) = 1``. It equals
``2√ε coth(√ε τ)``, ``2/τ`` or ``2√|ε| cot(√|ε| τ)`` depending on the sign of
``ε``. The ``t``-family is
``α = 2(e^τ - t e^{-τ}) / (e^τ + t e^{-τ})``, which equals ``2 tanh(τ - q)``
for ``t = e^{2q} > 0``, ``2 coth(τ - q)`` for ``t = -e^{2q} < 0`` and the
constant ``2`` for ``t = 0``.
"""

from __future__ import annotations

import functools
import math
import warnings

import numpy as np
from numpy.typing import NDArray
from scipy.special import bernoulli

from ricci_hessian_lib.exceptions import DomainError
from ricci_hessian_lib.profiles._profile_family import ContinuationKind


SIGMA_SERIES_TERMS = 12
SIGMA_SERIES_RADIUS = 0.25
POLE_GUARD = 1e-8

AlphaTriple = tuple[
    NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]
]


@functools.cache
def _sigma_polynomials() -> tuple[
    np.polynomial.Polynomial,
    np.polynomial.Polynomial,
    np.polynomial.Polynomial,
]:
    """Maclaurin polynomial of ``Σ`` and its first two derivatives."""
    numbers = bernoulli(2 * SIGMA_SERIES_TERMS)
    coefficients = [
        4**n * (4**n - 1) * numbers[2 * n] / math.factorial(2 * n)
        for n in range(1, SIGMA_SERIES_TERMS + 1)
    ]
    sigma = np.polynomial.Polynomial(coefficients)
    return sigma, sigma.deriv(1), sigma.deriv(2)


def sigma_series(
    y: float | NDArray[np.float64],
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Evaluates ``Σ``, ``Σ'`` and ``Σ''`` by their truncated series.

    Accurate to about ``1e-12`` relative for ``|y| < 0.25``.
    """
    sigma, sigma1, sigma2 = _sigma_polynomials()
    y = np.asarray(y, dtype=float)
    return sigma(y), sigma1(y), sigma2(y)


def _eps_family(eps: float, t: NDArray[np.float64]) -> AlphaTriple:
    if eps >= 0:
        too_close = np.abs(t) < POLE_GUARD
    else:
        period = math.pi / math.sqrt(-eps)
        too_close = np.abs(t - period * np.round(t / period)) < POLE_GUARD
    if np.any(too_close):
        raise DomainError(
            f"The eps-family with eps={eps} has a pole at "
            f"t={t[too_close][0]:.17g}."
        )

    alpha = np.empty_like(t)
    alpha1 = np.empty_like(t)
    alpha2 = np.empty_like(t)

    y = eps * t * t
    near = np.abs(y) < SIGMA_SERIES_RADIUS
    if np.any(near):
        tn, yn = t[near], y[near]
        sig, sig1, sig2 = sigma_series(yn)
        beta = tn * sig
        beta1 = sig + 2.0 * yn * sig1
        beta2 = eps * tn * (6.0 * sig1 + 4.0 * yn * sig2)
        alpha[near] = 2.0 / beta
        alpha1[near] = -2.0 * beta1 / beta**2
        alpha2[near] = 4.0 * beta1**2 / beta**3 - 2.0 * beta2 / beta**2

    far = ~near
    if np.any(far):
        s = math.sqrt(abs(eps))
        arg = s * t[far]
        if eps > 0:
            cot = 1.0 / np.tanh(arg)
            with np.errstate(over="ignore"):
                csc2 = 1.0 / np.sinh(arg) ** 2
        else:
            cot = 1.0 / np.tan(arg)
            csc2 = 1.0 / np.sin(arg) ** 2
        alpha[far] = 2.0 * s * cot
        alpha1[far] = -2.0 * s * s * csc2
        alpha2[far] = 4.0 * s**3 * csc2 * cot
    return alpha, alpha1, alpha2


def _t_family(param: float, t: NDArray[np.float64]) -> AlphaTriple:
    if param < 0:
        pole = 0.5 * math.log(-param)
        too_close = np.abs(t - pole) < POLE_GUARD
        if np.any(too_close):
            raise DomainError(
                f"The t-family with t={param} has a pole at "
                f"tau={pole:.17g}."
            )
    # Factor out the dominant exponential so nothing overflows.
    weight = np.exp(-2.0 * np.abs(t))
    positive = t >= 0
    numerator = np.where(positive, 1.0 - param * weight, weight - param)
    denominator = np.where(positive, 1.0 + param * weight, weight + param)
    alpha = 2.0 * numerator / denominator
    alpha1 = 8.0 * param * weight / denominator**2
    alpha2 = -16.0 * param * weight * numerator / denominator**3
    return alpha, alpha1, alpha2


def continuation_derivatives(
    kind: ContinuationKind | str,
    param: float,
    tau: float | NDArray[np.float64],
) -> tuple[
    float | NDArray[np.float64],
    float | NDArray[np.float64],
    float | NDArray[np.float64],
]:
    """Evaluates ``α``, ``α'`` and ``α''`` of a continuation family.

    Args:
        kind:
            ``"eps"`` or ``"t"``.
        param:
            The value of ``ε`` or ``t``.
        tau:
            Evaluation point or array of points.

    Returns:
        The tuple ``(α, α', α'')`` with the shape of ``tau``.

    Raises:
        DomainError: Within ``1e-8`` of a zero of the denominator.
    """
    kind = ContinuationKind(kind)
    t = np.asarray(tau, dtype=float)
    flat = np.atleast_1d(t).astype(float)
    if kind is ContinuationKind.EPS_FAMILY:
        values = _eps_family(float(param), flat)
    else:
        values = _t_family(float(param), flat)
    if t.ndim == 0:
        return tuple(float(v[0]) for v in values)  # type: ignore
    return tuple(v.reshape(t.shape) for v in values)  # type: ignore


def continuation_alpha(
    kind: ContinuationKind | str,
    param: float,
    tau: float | NDArray[np.float64],
) -> float | NDArray[np.float64]:
    """Evaluates ``α`` of a continuation family.

    With ``ε = 0`` the ε-family reduces to ``2/τ``, and with ``t = 0`` the
    t-family is the constant ``2``.

    Raises:
        DomainError: Within ``1e-8`` of a zero of the denominator.
    """
    return continuation_derivatives(kind, param, tau)[0]


def continuation_eps(
    kind: ContinuationKind | str,
    param: float,
    taus: NDArray[np.float64],
    tol: float = 1e-9,
) -> NDArray[np.float64]:
    """Computes ``ε = (2α' + α²)/4`` numerically along ``taus``.

    A warning is issued if the values are not constant to ``tol`` relative
    to ``1 + max|ε|``.
    """
    alpha, alpha1, _ = continuation_derivatives(kind, param, taus)
    eps = np.asarray((2.0 * alpha1 + alpha * alpha) / 4.0)
    spread = float(np.ptp(eps)) if eps.size else 0.0
    if spread > tol * (1.0 + float(np.max(np.abs(eps), initial=0.0))):
        warnings.warn(
            f"eps of the {ContinuationKind(kind).value}-family with "
            f"parameter {param} varies by {spread:.3e} along tau.",
            stacklevel=2,
        )
    return eps
