"""The affine space of first jets solving the reduced system."""

from __future__ import annotations

import numpy as np

from ricci_hessian_lib._state_z import Real, StateZ
from ricci_hessian_lib.exceptions import AdmissibilityError
from ricci_hessian_lib.profiles import ProfileEval
from ricci_hessian_lib.jet_algebra._jet_types import Jet1


def solve_jet(
    z: StateZ, prof: ProfileEval, q_tau: Real, q_lam: Real
) -> Jet1:
    """Returns the unique solution of the reduced system with prescribed
    ``(Q_τ, Q_λ)``.

    The remaining partials follow in this order::

        S_λ = Qα + F - Q_τ
        S_τ = (S Q_τ + B Q_λ - S S_λ) / Q
        B_λ = Sα + G - S_τ
        B_τ = (S S_τ + B S_λ - S B_λ) / Q
        G_τ = -S α'
        G_λ = Q α' + F'

    Args:
        z:
            The state. Only ``Q > 0`` is required.
        prof:
            The profile evaluated at the point's ``τ``.
        q_tau:
            Prescribed ``Q_τ``.
        q_lam:
            Prescribed ``Q_λ``.

    Returns:
        A :class:`Jet1` with the broadcast shape of the inputs.

    Raises:
        AdmissibilityError: If ``Q ≤ 0`` somewhere.
    """
    Q, S, B, G = z.fields()
    if np.any(np.asarray(Q) <= 0):
        raise AdmissibilityError(
            f"solve_jet needs Q > 0, got min Q = {np.min(Q)}."
        )
    s_lam = Q * prof.alpha + prof.F - q_tau
    s_tau = (S * q_tau + B * q_lam - S * s_lam) / Q
    b_lam = S * prof.alpha + G - s_tau
    b_tau = (S * s_tau + B * s_lam - S * b_lam) / Q
    g_tau = -S * prof.alpha1
    g_lam = Q * prof.alpha1 + prof.F1
    return Jet1(q_tau, s_tau, b_tau, g_tau, q_lam, s_lam, b_lam, g_lam)


def affine_basis(z: StateZ, prof: ProfileEval) -> tuple[Jet1, Jet1, Jet1]:
    """Returns a particular solution and a basis of the directions of the
    affine space of solutions.

    The particular solution has ``Q_τ = Q_λ = 0``; ``e1`` has
    ``(Q_τ, Q_λ) = (1, 0)`` and ``e2`` has ``(0, 1)``. Every solution of
    the reduced system at ``z`` is ``particular + x e1 + y e2`` for unique
    ``x`` and ``y``.

    Raises:
        AdmissibilityError: If ``Q ≤ 0`` somewhere.
    """
    particular = solve_jet(z, prof, 0.0, 0.0)
    e1 = solve_jet(z, prof, 1.0, 0.0) - particular
    e2 = solve_jet(z, prof, 0.0, 1.0) - particular
    return particular, e1, e2
