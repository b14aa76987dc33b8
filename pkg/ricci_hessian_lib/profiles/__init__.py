"""Coefficient profiles ``α`` and ``F`` of the special Ricci-Hessian
equation.

.. autosummary::
    :nosignatures:

    ProfileFamily
    ContinuationKind
    ProfileParams
    ProfileEval
    eval_profile
    affine_modify
    inverse_modification
    continuation_alpha
    continuation_derivatives
    continuation_eps
    sigma_series
    valid_intervals
    interval_containing
    check_tau_range
    distance_to_nearest_pole
    poles_in
    transnormal_solution
    has_constant_alpha

A profile is one of the five canonical families ``const2`` (``α = 2``),
``reciprocal`` (``α = 2/τ``), ``tanh`` (``α = 2 tanh τ``), ``coth``
(``α = 2 coth τ``) and ``cot`` (``α = 2 cot τ``), or one of the two
continuation families ``eps`` and ``t``, possibly after an affine
modification. Together with the constants ``θ`` and ``κ`` it determines
``F`` and ``ψ`` in closed form.
"""

from ._profile_family import ProfileFamily, ContinuationKind
from ._profile_params import ProfileParams
from ._profile_eval import ProfileEval, eval_profile
from ._affine import affine_modify, inverse_modification
from ._continuation import (
    continuation_alpha,
    continuation_derivatives,
    continuation_eps,
    sigma_series,
)
from ._intervals import (
    valid_intervals,
    interval_containing,
    check_tau_range,
    distance_to_nearest_pole,
    poles_in,
)
from ._transnormal import transnormal_solution, has_constant_alpha


__all__ = [
    "ProfileFamily",
    "ContinuationKind",
    "ProfileParams",
    "ProfileEval",
    "eval_profile",
    "affine_modify",
    "inverse_modification",
    "continuation_alpha",
    "continuation_derivatives",
    "continuation_eps",
    "sigma_series",
    "valid_intervals",
    "interval_containing",
    "check_tau_range",
    "distance_to_nearest_pole",
    "poles_in",
    "transnormal_solution",
    "has_constant_alpha",
]
