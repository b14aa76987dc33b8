"""Pointwise linear algebra of the reduced first-order system.

.. autosummary::
    :nosignatures:

    Jet1
    Direction
    RateZ
    residual_system
    residual_consequences
    residual_scale
    solve_jet
    affine_basis
    phi_map
    check_L
    invert_phi
    horizontal_quadratic

At each point the first jets of ``Z = (Q, S, B, G)`` that solve the system
form a two-dimensional affine space, parametrized by ``(Q_τ, Q_λ)``. Taking
derivatives along a nonzero direction is an isomorphism of that space onto
the rates satisfying two linear conditions (see :func:`check_L`), which is
what makes the extension of admissible initial data unique.
"""

from ._jet_types import Jet1, Direction, RateZ
from ._residuals import (
    residual_system,
    residual_consequences,
    residual_scale,
)
from ._affine_space import solve_jet, affine_basis
from ._phi_map import phi_map, check_L, invert_phi, horizontal_quadratic


__all__ = [
    "Jet1",
    "Direction",
    "RateZ",
    "residual_system",
    "residual_consequences",
    "residual_scale",
    "solve_jet",
    "affine_basis",
    "phi_map",
    "check_L",
    "invert_phi",
    "horizontal_quadratic",
]
