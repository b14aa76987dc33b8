"""Admissible initial data on a line ``τ = τ₀``."""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import StateZ
from ricci_hessian_lib.exceptions import (
    ConfigError,
    DegeneracyError,
    PositivityError,
)
from ricci_hessian_lib.profiles import ProfileParams, eval_profile
from ricci_hessian_lib.evolution._seed_function import (
    DEFAULT_Q_EXPRESSION,
    DEFAULT_S_EXPRESSION,
    SeedFunction,
)
from ricci_hessian_lib.evolution._slice import Slice, check_lambda_grid


logger = logging.getLogger(__name__)

DEGENERACY_TOLERANCE = 1e-12


def _seed_index(lambda_grid: NDArray[np.float64], seed_lambda: float) -> int:
    h = lambda_grid[1] - lambda_grid[0]
    index = int(np.argmin(np.abs(lambda_grid - seed_lambda)))
    if abs(lambda_grid[index] - seed_lambda) > 1e-9 * abs(h):
        raise ConfigError(
            f"seed_lambda={seed_lambda} is not a node of the lambda grid."
        )
    return index


def _first_offending(
    lambda_grid: NDArray[np.float64], mask: NDArray[np.bool_]
) -> float:
    return float(lambda_grid[np.flatnonzero(mask)[0]])


def generate_initial_data(
    profile: ProfileParams,
    tau0: float,
    lambda_grid: NDArray[np.float64],
    q_fn: SeedFunction | str | None = None,
    s_fn: SeedFunction | str | None = None,
    b0: float = 1.0,
    g0: float = 0.0,
    seed_lambda: float | None = None,
) -> Slice:
    """Generates initial data on ``τ = tau0`` satisfying both λ-constraints.

    ``Q`` and ``S`` are prescribed by ``q_fn`` and ``s_fn``. ``B`` and
    ``G`` are obtained by classical fourth-order Runge-Kutta integration in
    ``λ`` of::

        G_λ = Q α'(τ₀) + F'(τ₀)
        B_λ = (Q G - S F(τ₀) - Q_λ B + 2 S S_λ) / Q

    from ``B = b0`` and ``G = g0`` at the first grid node, or at the node
    ``seed_lambda`` (integrating in both directions). ``Q_λ`` and ``S_λ``
    are the exact derivatives of the seed functions.

    Args:
        profile:
            The coefficient profile.
        tau0:
            The initial value of ``τ``.
        lambda_grid:
            Uniform λ-grid with at least five points.
        q_fn:
            Seed of ``Q``. Strings are parsed as expressions. Defaults to
            ``1 + lam/2``.
        s_fn:
            Seed of ``S``. Defaults to ``0.3*sin(lam)``.
        b0:
            Value of ``B`` at the seed node.
        g0:
            Value of ``G`` at the seed node.
        seed_lambda:
            Grid node where ``b0`` and ``g0`` are prescribed. Defaults to the
            first node.

    Returns:
        An admissible :class:`Slice`.

    Raises:
        ConfigError: If the grid or the expressions are invalid.
        DomainError: If ``tau0`` is at a pole of the profile.
        PositivityError: If ``Q ≤ 0`` or ``Π ≤ 0`` somewhere.
        DegeneracyError: If ``Q_λ`` vanishes somewhere.
    """
    lambda_grid = np.asarray(lambda_grid, dtype=float)
    h = check_lambda_grid(lambda_grid)
    q_seed = SeedFunction.coerce(q_fn, DEFAULT_Q_EXPRESSION)
    s_seed = SeedFunction.coerce(s_fn, DEFAULT_S_EXPRESSION)
    prof = eval_profile(profile, tau0)

    q = np.asarray(q_seed(lambda_grid))
    q_lam = np.asarray(q_seed.derivative(lambda_grid))
    if np.any(q <= 0):
        lam = _first_offending(lambda_grid, q <= 0)
        raise PositivityError(
            f"The seed of Q is not positive at lambda={lam}.", tau0, lam
        )
    degenerate = np.abs(q_lam) <= DEGENERACY_TOLERANCE * (1.0 + np.abs(q))
    if np.any(degenerate):
        lam = _first_offending(lambda_grid, degenerate)
        raise DegeneracyError(
            f"Q_lambda vanishes at lambda={lam}; the initial data must have "
            "a nonvanishing Q_lambda."
        )

    def rhs(lam: float, b: float, g: float) -> tuple[float, float]:
        q_val = q_seed(lam)
        s_val = s_seed(lam)
        g_lam = q_val * prof.alpha1 + prof.F1
        b_lam = (
            q_val * g
            - s_val * prof.F
            - q_seed.derivative(lam) * b
            + 2.0 * s_val * s_seed.derivative(lam)
        ) / q_val
        return b_lam, g_lam

    def rk4_step(lam: float, step: float, b: float, g: float):
        k1 = rhs(lam, b, g)
        k2 = rhs(lam + step / 2, b + step / 2 * k1[0], g + step / 2 * k1[1])
        k3 = rhs(lam + step / 2, b + step / 2 * k2[0], g + step / 2 * k2[1])
        k4 = rhs(lam + step, b + step * k3[0], g + step * k3[1])
        b_next = b + step / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        g_next = g + step / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        return b_next, g_next

    start = 0 if seed_lambda is None else _seed_index(lambda_grid, seed_lambda)
    b = np.empty_like(lambda_grid)
    g = np.empty_like(lambda_grid)
    b[start], g[start] = b0, g0
    for i in range(start, lambda_grid.size - 1):
        b[i + 1], g[i + 1] = rk4_step(lambda_grid[i], h, b[i], g[i])
    for i in range(start, 0, -1):
        b[i - 1], g[i - 1] = rk4_step(lambda_grid[i], -h, b[i], g[i])

    s = np.asarray(s_seed(lambda_grid))
    state = StateZ(q, s, b, g)
    pi = state.pi
    bad = ~np.isfinite(pi) | (pi <= 0)
    if np.any(bad):
        lam = _first_offending(lambda_grid, bad)
        raise PositivityError(
            f"Initial data with b0={b0}, g0={g0} has Pi <= 0 at "
            f"lambda={lam}.",
            tau0,
            lam,
        )
    logger.info(
        "Generated initial data at tau=%g on %d points; min Q=%.3e, "
        "min Pi=%.3e.",
        tau0,
        lambda_grid.size,
        float(np.min(q)),
        float(np.min(pi)),
    )
    return Slice(
        tau=float(tau0), lambda_grid=lambda_grid, state=state, profile=profile
    )
