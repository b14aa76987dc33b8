"""Formal power-series solutions of the reduced system."""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import Real, StateZ
from ricci_hessian_lib.exceptions import (
    AdmissibilityError,
    OrderError,
    ValidationError,
)
from ricci_hessian_lib.profiles import (
    ProfileParams,
    distance_to_nearest_pole,
    eval_profile,
)
from ricci_hessian_lib.evolution import (
    DEFAULT_Q_EXPRESSION,
    DEFAULT_S_EXPRESSION,
    SeedFunction,
)
from ricci_hessian_lib.series._bivariate import (
    coefficient_of_product,
    d_lam,
    d_tau,
)
from ricci_hessian_lib.series._taylor_z import TaylorZ
from ricci_hessian_lib.series._univariate import (
    derivative_coefficients,
    profile_taylor_coefficients,
)


logger = logging.getLogger(__name__)

MIN_ORDER = 1
MAX_ORDER = 12
MAX_TRUST_RADIUS = 1.0
SEED_TOLERANCE = 1e-10


def seed_series(
    q_fn: SeedFunction | str | None,
    s_fn: SeedFunction | str | None,
    lambda_star: float,
    order: int,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Taylor coefficients of the seeds of ``Q`` and ``S`` at
    ``lambda_star``.

    Strings are parsed with
    :func:`~ricci_hessian_lib.evolution.parse_expression`; ``None`` selects
    the default seeds of the initial-data generator.

    Raises:
        ValidationError: If a seed was built from callables.
    """
    q_seed = SeedFunction.coerce(q_fn, DEFAULT_Q_EXPRESSION)
    s_seed = SeedFunction.coerce(s_fn, DEFAULT_S_EXPRESSION)
    return (
        q_seed.taylor_coefficients(lambda_star, order),
        s_seed.taylor_coefficients(lambda_star, order),
    )


def _padded(coefficients: NDArray[np.float64], size: int) -> NDArray:
    out = np.zeros(size)
    values = np.asarray(coefficients, dtype=float)[:size]
    out[: values.size] = values
    return out


def _resolve_seeds(
    z: StateZ,
    c0: float,
    q_tau: float | None,
    q_lam: float | None,
    seed_lambda_series: (
        tuple[NDArray[np.float64], NDArray[np.float64]] | None
    ),
    order: int,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    size = order + 1
    if seed_lambda_series is None:
        if q_tau is None or q_lam is None:
            raise ValidationError(
                "q_tau and q_lam are required without seed series."
            )
        q_row = np.zeros(size)
        s_row = np.zeros(size)
        q_row[:2] = z.Q, q_lam
        s_row[:2] = z.S, c0 - q_tau
        return q_row, s_row

    q_row = _padded(seed_lambda_series[0], size)
    s_row = _padded(seed_lambda_series[1], size)
    scale = 1.0 + max(abs(z.Q), abs(z.S), abs(c0))
    if (
        abs(q_row[0] - z.Q) > SEED_TOLERANCE * scale
        or abs(s_row[0] - z.S) > SEED_TOLERANCE * scale
    ):
        raise ValidationError(
            "The seed series do not start at the given state: "
            f"Q={q_row[0]} vs {z.Q}, S={s_row[0]} vs {z.S}."
        )
    if q_lam is not None and abs(q_row[1] - q_lam) > SEED_TOLERANCE * scale:
        raise ValidationError(
            f"q_lam={q_lam} contradicts the seed series ({q_row[1]})."
        )
    if (
        q_tau is not None
        and abs(c0 - s_row[1] - q_tau) > SEED_TOLERANCE * scale
    ):
        raise ValidationError(
            f"q_tau={q_tau} contradicts the seed series "
            f"({c0 - s_row[1]})."
        )
    return q_row, s_row


def _initial_row(
    z: StateZ,
    q: NDArray[np.float64],
    s: NDArray[np.float64],
    b: NDArray[np.float64],
    g: NDArray[np.float64],
    a: NDArray[np.float64],
    f: NDArray[np.float64],
) -> None:
    n = q.shape[0] - 1
    q0, s0 = q[0], s[0]
    g[0, 0] = z.G
    for j in range(n):
        g[0, j + 1] = (q0[j] * a[1] + (f[1] if j == 0 else 0.0)) / (j + 1)

    # P = QB - S² satisfies P_λ = QG - SF along the row.
    p = np.zeros(n + 1)
    p[0] = z.pi
    for j in range(1, n + 1):
        qg = float(np.dot(q0[:j], g[0, j - 1 :: -1]))
        p[j] = (qg - f[0] * s0[j - 1]) / j
    s_squared = np.convolve(s0, s0)[: n + 1]
    b[0, 0] = z.B
    for j in range(1, n + 1):
        tail = float(np.dot(q0[1 : j + 1], b[0, j - 1 :: -1]))
        b[0, j] = (p[j] + s_squared[j] - tail) / q0[0]


def _next_row(
    i: int,
    q: NDArray[np.float64],
    s: NDArray[np.float64],
    b: NDArray[np.float64],
    g: NDArray[np.float64],
    a: NDArray[np.float64],
    f: NDArray[np.float64],
) -> None:
    n = q.shape[0] - 1
    a1 = derivative_coefficients(a)
    for j in range(n - i):
        q_alpha = float(np.dot(q[i::-1, j], a[: i + 1]))
        s_alpha = float(np.dot(s[i::-1, j], a[: i + 1]))
        s_alpha1 = float(np.dot(s[i::-1, j], a1[: i + 1]))
        forcing = f[i] if j == 0 else 0.0
        q[i + 1, j] = (
            q_alpha + forcing - (j + 1) * s[i, j + 1]
        ) / (i + 1)
        s[i + 1, j] = (
            s_alpha + g[i, j] - (j + 1) * b[i, j + 1]
        ) / (i + 1)
        g[i + 1, j] = -s_alpha1 / (i + 1)

    s_tau, s_lam, b_lam = d_tau(s), d_lam(s), d_lam(b)
    for j in range(n - i):
        b_tau = d_tau(b)
        rhs = (
            coefficient_of_product(s, s_tau, i, j)
            + coefficient_of_product(b, s_lam, i, j)
            - coefficient_of_product(s, b_lam, i, j)
        )
        # b[i + 1, j] is still zero, so this is Q B_τ without its leading
        # term.
        partial = coefficient_of_product(q, b_tau, i, j)
        b[i + 1, j] = (rhs - partial) / ((i + 1) * q[0, 0])


def taylor_extend(
    z: StateZ,
    profile: ProfileParams,
    tau_star: float,
    q_tau: float | None,
    q_lam: float | None,
    order: int,
    seed_lambda_series: (
        tuple[NDArray[np.float64], NDArray[np.float64]] | None
    ) = None,
    lambda_star: float = 0.0,
    trust_radius: float | None = None,
) -> TaylorZ:
    """Computes the Taylor expansion of order ``order`` of the solution of
    the reduced system through ``(tau_star, lambda_star)``.

    The line ``τ = τ*`` carries the seeds of ``Q`` and ``S``. Row zero of
    ``G`` and ``B`` follows from the two λ-constraints, the latter through
    ``P = QB - S²`` and ``P_λ = QG - SF``. Higher rows follow from the
    four τ-evolution equations, ``B`` last since its equation is
    implicit in the leading coefficient of ``Q``.

    Without ``seed_lambda_series`` the seeds are the linear functions with
    the slopes fixed by ``q_tau`` and ``q_lam``, so that the first-order
    part coincides with :func:`~ricci_hessian_lib.jet_algebra.solve_jet`.

    Args:
        z:
            The state at the center.
        profile:
            The coefficient profile.
        tau_star:
            ``τ`` of the center.
        q_tau:
            ``Q_τ`` at the center. May be ``None`` when seed series are
            given.
        q_lam:
            ``Q_λ`` at the center. May be ``None`` when seed series are
            given.
        order:
            Total degree ``N``, between 1 and 12.
        seed_lambda_series:
            Optional Taylor coefficients in ``λ - λ*`` of the seeds of ``Q``
            and ``S`` (see :func:`seed_series`).
        lambda_star:
            ``λ`` of the center.
        trust_radius:
            Evaluation radius. Defaults to a quarter of the distance to the
            nearest pole of ``α``, capped at 1.

    Returns:
        The :class:`TaylorZ` expansion.

    Raises:
        OrderError: If ``order`` is outside ``1..12``.
        AdmissibilityError: If ``Q ≤ 0`` or ``Π ≤ 0`` at the center.
        DomainError: If ``tau_star`` is at a pole.
        ValidationError: If seed series contradict ``z``, ``q_tau`` or
            ``q_lam``.
    """
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise OrderError(
            f"The order must be between {MIN_ORDER} and {MAX_ORDER}, "
            f"got {order}."
        )
    if z.Q <= 0 or z.pi <= 0:
        raise AdmissibilityError(
            f"Taylor extension needs Q > 0 and Π > 0, got Q={z.Q}, "
            f"Π={z.pi}."
        )
    prof = eval_profile(profile, tau_star)
    a, f = profile_taylor_coefficients(prof, order)
    c0 = float(z.Q * a[0] + f[0])
    q_row, s_row = _resolve_seeds(
        z, c0, q_tau, q_lam, seed_lambda_series, order
    )

    size = order + 1
    q, s, b, g = (np.zeros((size, size)) for _ in range(4))
    q[0], s[0] = q_row, s_row
    _initial_row(z, q, s, b, g, a, f)
    for i in range(order):
        _next_row(i, q, s, b, g, a, f)

    if trust_radius is None:
        distance = distance_to_nearest_pole(profile, tau_star)
        trust_radius = min(0.25 * float(distance), MAX_TRUST_RADIUS)
    logger.debug(
        "Taylor extension of order %d at (%g, %g), trust radius %g.",
        order,
        tau_star,
        lambda_star,
        trust_radius,
    )
    return TaylorZ(
        center=(float(tau_star), float(lambda_star)),
        order=order,
        q=q,
        s=s,
        b=b,
        g=g,
        alpha_coeffs=a,
        f_coeffs=f,
        trust_radius=float(trust_radius),
        profile=profile,
    )


def eval_taylor(t: TaylorZ, tau: Real, lam: Real) -> StateZ:
    """Evaluates an expansion at ``(tau, lam)``.

    Raises:
        RadiusError: If a point lies outside the trust radius.
    """
    return t.evaluate(tau, lam)
