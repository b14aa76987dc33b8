"""Affine modifications of profiles."""

from __future__ import annotations

import dataclasses
import math

from ricci_hessian_lib.exceptions import ConfigError
from ricci_hessian_lib.profiles._profile_params import ProfileParams


def inverse_modification(c: float, p: float) -> tuple[float, float]:
    """Returns the modification ``(c', p')`` that undoes ``(c, p)``.

    Applying ``(c, p)`` and then ``(1/c, -c p)`` gives back the original
    profile.

    Raises:
        ConfigError: If ``c`` is zero.
    """
    if c == 0:
        raise ConfigError("The affine scale c must be nonzero.")
    return 1.0 / c, -c * p


def affine_modify(params: ProfileParams, c: float, p: float) -> ProfileParams:
    """Applies the affine modification ``τ = c (τ̂ - p)`` to a profile.

    The modified profile is ``α̂(τ̂) = c α(c (τ̂ - p))``, so that
    ``ε̂ = c² ε``. Modifications compose: if ``params`` already carries
    ``(c₀, p₀)``, the result carries ``(c₀ c, p + p₀ / c)``.

    The constants are transformed so that the closed form of ``F`` is
    preserved with ``F̂(τ̂) = F(τ) / c``:

    * ``θ̂ = c θ``;
    * ``κ̂ = κ / c² + θ p / (4 c ε)`` if ``ε ≠ 0``, and ``κ̂ = κ / c²``
      otherwise, where ``ε`` is the constant of ``params``.

    Args:
        params:
            The profile to modify.
        c:
            Nonzero scale.
        p:
            Shift.

    Returns:
        A new :class:`ProfileParams`.

    Raises:
        ConfigError: If ``c`` is zero or not finite.
    """
    if c == 0 or not math.isfinite(c):
        raise ConfigError(
            f"The affine scale c must be finite and nonzero, got {c}."
        )
    eps = params.eps
    kappa = params.kappa / c**2
    if eps != 0:
        kappa += params.theta * p / (4.0 * c * eps)
    return dataclasses.replace(
        params,
        theta=c * params.theta,
        kappa=kappa,
        affine_c=params.affine_c * c,
        affine_p=p + params.affine_p / c,
    )
