"""Residuals of the reduced first-order system and its consequences."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import Real, StateZ, stack_broadcast
from ricci_hessian_lib.profiles import ProfileEval
from ricci_hessian_lib.jet_algebra._jet_types import Jet1


def residual_system(
    z: StateZ, jet: Jet1, prof: ProfileEval
) -> NDArray[np.float64]:
    """Evaluates the six equations of the reduced system.

    The rows are, in order::

        Q_τ + S_λ - Qα - F
        S_τ + B_λ - Sα - G
        Q B_τ + S B_λ - S S_τ - B S_λ
        S Q_τ + B Q_λ - Q S_τ - S S_λ
        G_τ + S α'
        G_λ - Q α' - F'

    A jet solves the system at ``z`` exactly when all six vanish.

    Args:
        z:
            The state.
        jet:
            Candidate first partials.
        prof:
            The profile evaluated at the point's ``τ``.

    Returns:
        Array of shape ``(6,) + shape`` where ``shape`` is the broadcast
        shape of the inputs.
    """
    Q, S, B, G = z.fields()
    a, a1 = prof.alpha, prof.alpha1
    F, F1 = prof.F, prof.F1
    return stack_broadcast(
        jet.Q_tau + jet.S_lam - Q * a - F,
        jet.S_tau + jet.B_lam - S * a - G,
        Q * jet.B_tau + S * jet.B_lam - S * jet.S_tau - B * jet.S_lam,
        S * jet.Q_tau + B * jet.Q_lam - Q * jet.S_tau - S * jet.S_lam,
        jet.G_tau + S * a1,
        jet.G_lam - Q * a1 - F1,
    )


def residual_consequences(
    z: StateZ, jet: Jet1, prof: ProfileEval
) -> NDArray[np.float64]:
    """Evaluates the two consequences of the reduced system::

        Q B_τ + B Q_τ - 2 S S_τ - Πα - B F + S G
        Q B_λ + B Q_λ - 2 S S_λ - Q G + S F

    Both vanish whenever :func:`residual_system` does. The second one is the
    constraint ``C1`` monitored during evolution.

    Returns:
        Array of shape ``(2,) + shape``.
    """
    Q, S, B, G = z.fields()
    F = prof.F
    return stack_broadcast(
        Q * jet.B_tau
        + B * jet.Q_tau
        - 2.0 * S * jet.S_tau
        - z.pi * prof.alpha
        - B * F
        + S * G,
        Q * jet.B_lam + B * jet.Q_lam - 2.0 * S * jet.S_lam - Q * G + S * F,
    )


def residual_scale(z: StateZ, prof: ProfileEval) -> Real:
    """Returns ``1 + max(|Q|, |S|, |B|, |G|, |α|, |F|)`` pointwise.

    All tolerances of the jet algebra are relative to this scale.
    """
    magnitudes = stack_broadcast(*z.fields(), prof.alpha, prof.F)
    scale = 1.0 + np.max(np.abs(magnitudes), axis=0)
    if scale.ndim == 0:
        return float(scale)
    return scale
