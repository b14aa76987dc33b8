"""Directional derivatives of jets and their inversion."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import Real, StateZ, stack_broadcast
from ricci_hessian_lib.exceptions import (
    DirectionError,
    MembershipError,
    SingularError,
)
from ricci_hessian_lib.profiles import ProfileEval
from ricci_hessian_lib.jet_algebra._jet_types import Jet1, Direction, RateZ
from ricci_hessian_lib.jet_algebra._affine_space import solve_jet
from ricci_hessian_lib.jet_algebra._residuals import residual_scale


SINGULAR_TOLERANCE = 1e-14


def phi_map(jet: Jet1, direction: Direction) -> RateZ:
    """Returns the derivative of ``(Q, S, B, G)`` along ``direction``.

    Each component is ``(τ-partial) τ̇ + (λ-partial) λ̇``.
    """
    t, l = direction.tau_dot, direction.lam_dot
    return RateZ(
        jet.Q_tau * t + jet.Q_lam * l,
        jet.S_tau * t + jet.S_lam * l,
        jet.B_tau * t + jet.B_lam * l,
        jet.G_tau * t + jet.G_lam * l,
    )


def check_L(
    z: StateZ, prof: ProfileEval, direction: Direction, rate: RateZ
) -> NDArray[np.float64]:
    """Evaluates the two linear conditions that every rate obtained from a
    solution jet satisfies::

        Ġ - (-S α' τ̇ + (Q α' + F') λ̇)
        Q Ḃ + B Q̇ - 2 S Ṡ - ((Πα + B F - S G) τ̇ + (Q G - S F) λ̇)

    Returns:
        Array of shape ``(2,) + shape``.
    """
    Q, S, B, G = z.fields()
    t, l = direction.tau_dot, direction.lam_dot
    F, a1, F1 = prof.F, prof.alpha1, prof.F1
    return stack_broadcast(
        rate.G_dot - (-S * a1 * t + (Q * a1 + F1) * l),
        Q * rate.B_dot
        + B * rate.Q_dot
        - 2.0 * S * rate.S_dot
        - ((z.pi * prof.alpha + B * F - S * G) * t + (Q * G - S * F) * l),
    )


def horizontal_quadratic(z: StateZ, direction: Direction) -> Real:
    """Returns ``Ψ = B τ̇² - 2 S τ̇ λ̇ + Q λ̇²``.

    ``Ψ`` is positive for admissible states and nonzero directions, and
    ``Ψ / Q`` is the determinant of the linear system solved by
    :func:`invert_phi`.
    """
    t, l = direction.tau_dot, direction.lam_dot
    return z.B * t * t - 2.0 * z.S * t * l + z.Q * l * l


def invert_phi(
    z: StateZ,
    prof: ProfileEval,
    direction: Direction,
    rate: RateZ,
    tol: float = 1e-9,
) -> Jet1:
    """Returns the unique solution jet whose derivative along ``direction``
    is ``rate``.

    Solution jets are parametrized by ``(Q_τ, Q_λ)`` through
    :func:`solve_jet`, which makes ``Q̇`` and ``Ṡ`` affine functions of
    them. The resulting 2×2 system is::

        [τ̇               λ̇       ] [Q_τ]   [Q̇                      ]
        [2Sτ̇/Q - λ̇      Bτ̇/Q    ] [Q_λ] = [Ṡ + τ̇ S c / Q - λ̇ c   ]

        with c = Qα + F

    and its determinant is ``Ψ / Q`` (see :func:`horizontal_quadratic`).
    The remaining components ``Ḃ`` and ``Ġ`` of the recovered jet are then
    checked against ``rate``.

    Tolerances are relative: a residual ``r`` is accepted when
    ``|r| ≤ tol · scale · (1 + max|rate|)``, with ``scale`` given by
    :func:`residual_scale`.

    Args:
        z:
            An admissible state.
        prof:
            The profile evaluated at the point's ``τ``.
        direction:
            Nonzero direction.
        rate:
            The rate to invert. It must satisfy :func:`check_L`.
        tol:
            Relative tolerance of the membership checks.

    Returns:
        The recovered :class:`Jet1`.

    Raises:
        DirectionError: If ``direction`` is zero.
        MembershipError: If ``rate`` does not satisfy :func:`check_L`, or
            the recovered jet does not reproduce ``rate``.
        SingularError: If the 2×2 system is numerically singular.
    """
    if direction.is_zero():
        raise DirectionError("invert_phi needs a nonzero direction.")
    rate_size = np.max(np.abs(rate.to_array()), axis=0)
    threshold = tol * residual_scale(z, prof) * (1.0 + rate_size)

    membership = np.max(np.abs(check_L(z, prof, direction, rate)), axis=0)
    if np.any(membership > threshold):
        raise MembershipError(
            "The rate does not belong to the image of the solution jets: "
            f"check_L residual {np.max(membership):.3e} exceeds the "
            "tolerance."
        )

    Q, S, B, _ = z.fields()
    t, l = direction.tau_dot, direction.lam_dot
    c0 = Q * prof.alpha + prof.F
    m11, m12 = t, l
    m21 = 2.0 * S * t / Q - l
    m22 = B * t / Q
    r1 = rate.Q_dot
    r2 = rate.S_dot + t * S * c0 / Q - l * c0
    det = m11 * m22 - m12 * m21
    direction_size = np.asarray(t) ** 2 + np.asarray(l) ** 2
    if np.any(
        ~np.isfinite(det)
        | (np.abs(det) <= SINGULAR_TOLERANCE * direction_size)
    ):
        raise SingularError(
            "The 2x2 system of invert_phi is singular; the state is "
            "probably not admissible."
        )
    q_tau = (r1 * m22 - m12 * r2) / det
    q_lam = (m11 * r2 - m21 * r1) / det
    jet = solve_jet(z, prof, q_tau, q_lam)

    recovered = phi_map(jet, direction)
    mismatch = np.maximum(
        np.abs(recovered.B_dot - rate.B_dot),
        np.abs(recovered.G_dot - rate.G_dot),
    )
    if np.any(mismatch > threshold):
        raise MembershipError(
            "The recovered jet does not reproduce the rate: mismatch "
            f"{np.max(mismatch):.3e}."
        )
    return jet
