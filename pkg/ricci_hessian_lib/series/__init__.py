"""Formal power-series solutions of the reduced system.

.. autosummary::
    :nosignatures:

    TaylorZ
    taylor_extend
    eval_taylor
    seed_series
    profile_taylor_coefficients
    sample_grid

Taylor expansions serve as an independent oracle for the finite-difference
evolution: their coefficients solve the reduced system exactly up to the
truncation order, so residuals measure round-off only.
"""

from ._univariate import profile_taylor_coefficients, derivative_coefficients
from ._bivariate import (
    triangle_mask,
    multiply,
    d_tau,
    d_lam,
)
from ._taylor_z import TaylorZ
from ._taylor_extend import (
    taylor_extend,
    eval_taylor,
    seed_series,
    MAX_ORDER,
)
from ._sampling import sample_grid


__all__ = [
    "profile_taylor_coefficients",
    "derivative_coefficients",
    "triangle_mask",
    "multiply",
    "d_tau",
    "d_lam",
    "TaylorZ",
    "taylor_extend",
    "eval_taylor",
    "seed_series",
    "MAX_ORDER",
    "sample_grid",
]
