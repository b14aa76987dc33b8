"""Method-of-lines evolution of the reduced system in ``τ``."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import StateZ
from ricci_hessian_lib._stencils import derivative4, sixth_difference
from ricci_hessian_lib.exceptions import (
    BlowupError,
    ConfigError,
    PositivityError,
    ValidationError,
)
from ricci_hessian_lib.profiles import (
    ProfileEval,
    ProfileParams,
    check_tau_range,
    eval_profile,
)
from ricci_hessian_lib.jet_algebra import Jet1, residual_system
from ricci_hessian_lib.evolution._slice import Slice, SliceDiagnostics
from ricci_hessian_lib.evolution._grid_field import GridField


logger = logging.getLogger(__name__)


class OnFailure(str, Enum):
    """What :func:`evolve` does when positivity fails or the solution blows
    up."""

    TRUNCATE = "truncate"
    RAISE = "raise"


@dataclass(slots=True, frozen=True)
class EvolutionConfig:
    """Numerical parameters of :func:`evolve`.

    Attributes:
        cfl:
            Ratio between the τ-step and the λ spacing used when the number
            of steps is not given.
        edge_columns:
            Columns excluded on each side from the reported constraint norms
            of the initial slice.
        edge_speed:
            Growth rate of the excluded band: after evolving by ``Δτ`` the
            band has ``edge_columns + ceil(edge_speed |Δτ| / h)`` columns.
        dissipation:
            Strength ``σ`` of the sixth-difference filter applied after every
            τ-step. A Fourier mode of angle ``ϑ = k h`` is multiplied by
            ``1 - σ sin⁶(ϑ/2)``, so ``σ = 1`` removes the grid-scale mode
            and ``σ = 0`` turns the filter off.
        on_failure:
            ``"truncate"`` returns the computed part of the grid, marked as
            truncated; ``"raise"`` propagates the error.
    """

    cfl: float = 0.4
    edge_columns: int = 4
    edge_speed: float = 2.0
    dissipation: float = 1.0
    on_failure: OnFailure = OnFailure.TRUNCATE

    def __post_init__(self):
        if not (math.isfinite(self.cfl) and self.cfl > 0):
            raise ConfigError(f"cfl must be positive, got {self.cfl}.")
        if self.edge_columns < 0:
            raise ConfigError(
                f"edge_columns must be nonnegative, got {self.edge_columns}."
            )
        if not (math.isfinite(self.edge_speed) and self.edge_speed >= 0):
            raise ConfigError(
                f"edge_speed must be nonnegative, got {self.edge_speed}."
            )
        if not (
            math.isfinite(self.dissipation) and 0 <= self.dissipation <= 1
        ):
            raise ConfigError(
                f"dissipation must lie in [0, 1], got {self.dissipation}."
            )
        try:
            object.__setattr__(self, "on_failure", OnFailure(self.on_failure))
        except ValueError as e:
            raise ConfigError(
                f"on_failure {self.on_failure!r} not recognized. Available "
                f"options: {', '.join(o.value for o in OnFailure)}."
            ) from e

    def edge_band(self, elapsed: float, spacing: float) -> int:
        """Columns excluded on each side after evolving by ``elapsed``."""
        return self.edge_columns + math.ceil(
            self.edge_speed * abs(elapsed) / spacing - 1e-9
        )


def _interior(values: NDArray[np.float64], band: int) -> NDArray[np.float64]:
    n = values.shape[-1]
    band = max(0, min(band, (n - 1) // 2))
    return values[..., band : n - band]


def constraint_residuals(
    slice_: Slice, prof: ProfileEval | None = None
) -> NDArray[np.float64]:
    """Evaluates the two constraints that are not used for evolution::

        C1 = Q B_λ + B Q_λ - 2 S S_λ - Q G + S F
        C2 = G_λ - Q α' - F'

    with fourth-order λ-derivatives.

    Returns:
        Array of shape ``(2, n_lam)``.
    """
    prof = prof if prof is not None else slice_.profile_eval()
    Q, S, B, G = slice_.state.fields()
    d = slice_.lambda_derivatives()
    c1 = Q * d.B + B * d.Q - 2.0 * S * d.S - Q * G + S * prof.F
    c2 = d.G - Q * prof.alpha1 - prof.F1
    return np.stack([c1, c2])


def constraint_norms(
    slice_: Slice, prof: ProfileEval | None = None, edge_columns: int = 4
) -> tuple[float, float]:
    """Max-norms of ``C1`` and ``C2`` over the interior of a slice.

    ``edge_columns`` columns are excluded on each side (at least the
    central point is always kept).
    """
    residuals = _interior(constraint_residuals(slice_, prof), edge_columns)
    c1, c2 = np.max(np.abs(residuals), axis=1)
    return float(c1), float(c2)


def _rhs(
    y: NDArray[np.float64], prof: ProfileEval, spacing: float
) -> NDArray[np.float64]:
    Q, S, B, G = y
    s_lam = derivative4(S, spacing)
    b_lam = derivative4(B, spacing)
    q_tau = Q * prof.alpha + prof.F - s_lam
    s_tau = S * prof.alpha + G - b_lam
    with np.errstate(divide="ignore", invalid="ignore"):
        b_tau = (S * s_tau + B * s_lam - S * b_lam) / Q
    g_tau = -S * prof.alpha1
    return np.stack([q_tau, s_tau, b_tau, g_tau])


def _rk4_step(
    y: NDArray[np.float64],
    tau: float,
    dt: float,
    profile: ProfileParams,
    spacing: float,
) -> NDArray[np.float64]:
    start = eval_profile(profile, tau)
    middle = eval_profile(profile, tau + dt / 2)
    end = eval_profile(profile, tau + dt)
    with np.errstate(over="ignore", invalid="ignore"):
        k1 = _rhs(y, start, spacing)
        k2 = _rhs(y + dt / 2 * k1, middle, spacing)
        k3 = _rhs(y + dt / 2 * k2, middle, spacing)
        k4 = _rhs(y + dt * k3, end, spacing)
        return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _dissipate(
    y: NDArray[np.float64], strength: float
) -> NDArray[np.float64]:
    if not strength:
        return y
    with np.errstate(over="ignore", invalid="ignore"):
        return y + strength / 64 * sixth_difference(y)


def _check_state(
    y: NDArray[np.float64], tau: float, lambda_grid: NDArray[np.float64]
) -> None:
    if not np.all(np.isfinite(y)):
        raise BlowupError(f"Non-finite values at tau={tau:.6g}.", tau)
    Q, S, B, _ = y
    bad = (Q <= 0) | (Q * B - S * S <= 0)
    if np.any(bad):
        lam = float(lambda_grid[np.flatnonzero(bad)[0]])
        raise PositivityError(
            f"Q > 0 or Pi > 0 fails at tau={tau:.6g}, lambda={lam:.6g}.",
            tau,
            lam,
        )


def evolve(
    initial: Slice,
    tau1: float,
    n_steps: int | None = None,
    config: EvolutionConfig | None = None,
) -> GridField:
    """Evolves initial data from ``initial.tau`` to ``tau1``.

    The scheme is the method of lines: fourth-order Runge-Kutta in ``τ``
    and fourth-order finite differences in ``λ`` (central in the interior,
    one-sided at the two points next to each edge) applied to::

        Q_τ = Q α + F - S_λ
        S_τ = S α + G - B_λ
        B_τ = (S S_τ + B S_λ - S B_λ) / Q
        G_τ = -S α'

    The constraints ``C1`` and ``C2`` (see :func:`constraint_residuals`)
    are not imposed but monitored on every slice, together with
    :class:`SliceDiagnostics`.

    The τ-evolution of this system is not hyperbolic: the principal symbol
    has the nonreal eigenvalues given by ``Q μ² - 2 S μ + B = 0``, so
    perturbations of wave number ``k`` grow like ``exp(√Π |k| Δτ / Q)``.
    A sixth-difference filter (see :class:`EvolutionConfig`) damps the
    grid-scale modes after every step without lowering the order of the
    scheme.
    Only short τ-ranges can be evolved accurately, and errors of the
    one-sided edge closures spread inward. The constraint norms of each
    slice therefore exclude an edge band that widens with ``|τ - τ₀|``
    (see :class:`EvolutionConfig`).

    Args:
        initial:
            Admissible initial slice.
        tau1:
            Final value of ``τ``. It may be smaller than ``initial.tau``.
        n_steps:
            Number of τ-steps. Defaults to ``ceil(|tau1 - τ₀| / (cfl h))``.
        config:
            Numerical parameters.

    Returns:
        A :class:`GridField` with ``n_steps + 1`` slices, or fewer if the
        evolution was truncated.

    Raises:
        DomainError: If the τ-range touches a pole of the profile.
        ConfigError: If ``n_steps`` is invalid.
        BlowupError: On non-finite values, when ``on_failure="raise"``.
        PositivityError: If ``Q ≤ 0`` or ``Π ≤ 0`` and
            ``on_failure="raise"``.
    """
    config = config if config is not None else EvolutionConfig()
    profile = initial.profile
    tau0 = initial.tau
    h = initial.spacing
    check_tau_range(profile, tau0, tau1)
    if n_steps is None:
        n_steps = math.ceil(abs(tau1 - tau0) / (config.cfl * h))
    if n_steps < 0 or (n_steps == 0 and tau1 != tau0):
        raise ConfigError(f"Invalid number of steps {n_steps}.")
    dt = (tau1 - tau0) / n_steps if n_steps else 0.0
    logger.info(
        "Evolving from tau=%g to tau=%g in %d steps on %d lambda points.",
        tau0,
        tau1,
        n_steps,
        initial.n_lam,
    )

    rows = [initial.state.as_array()]
    taus = [tau0]
    first_band = config.edge_band(0.0, h)
    history = [constraint_norms(initial, edge_columns=first_band)]
    diagnostics: list[SliceDiagnostics] = [initial.diagnostics()]
    bands = [first_band]
    truncated = False
    reason = None
    y = rows[0]
    for k in range(n_steps):
        tau = tau0 + k * dt
        tau_next = tau0 + (k + 1) * dt if k + 1 < n_steps else tau1
        try:
            y = _rk4_step(y, tau, tau_next - tau, profile, h)
            y = _dissipate(y, config.dissipation)
            _check_state(y, tau_next, initial.lambda_grid)
        except (BlowupError, PositivityError) as e:
            if config.on_failure is OnFailure.RAISE:
                raise
            logger.warning(
                "Evolution truncated at tau=%g after %d of %d steps: %s",
                tau,
                k,
                n_steps,
                e,
            )
            truncated = True
            reason = f"{type(e).__name__}: {e}"
            break
        current = Slice(tau_next, initial.lambda_grid, StateZ(*y), profile)
        band = config.edge_band(tau_next - tau0, h)
        history.append(constraint_norms(current, edge_columns=band))
        diagnostics.append(current.diagnostics())
        bands.append(band)
        rows.append(y)
        taus.append(tau_next)
        logger.debug(
            "tau=%.6g C1=%.3e C2=%.3e min Pi=%.3e",
            tau_next,
            history[-1][0],
            history[-1][1],
            diagnostics[-1].min_pi,
        )

    stacked = np.stack(rows, axis=1)
    return GridField(
        tau_grid=np.asarray(taus),
        lambda_grid=initial.lambda_grid,
        q=stacked[0],
        s=stacked[1],
        b=stacked[2],
        g=stacked[3],
        profile=profile,
        constraint_history=np.asarray(history).reshape(-1, 2),
        diagnostics=diagnostics,
        edge_bands=bands,
        truncated=truncated,
        truncation_reason=reason,
    )


def system_residuals(field: GridField) -> NDArray[np.float64]:
    """Evaluates all six equations of the reduced system on a grid.

    The full first jet is reconstructed with fourth-order finite
    differences in both ``τ`` and ``λ`` and passed to
    :func:`~ricci_hessian_lib.jet_algebra.residual_system`.

    Returns:
        Array of shape ``(6, n_tau, n_lam)``.

    Raises:
        ValidationError: If the grid has fewer than five slices.
    """
    if field.n_tau < 5:
        raise ValidationError(
            "System residuals need at least 5 slices, got "
            f"{field.n_tau}."
        )
    dtau, dlam = field.tau_spacing, field.lambda_spacing
    tau_partials = [derivative4(f, dtau, axis=0) for f in field.fields()]
    lam_partials = [derivative4(f, dlam, axis=1) for f in field.fields()]
    jet = Jet1(*tau_partials, *lam_partials)
    prof = eval_profile(field.profile, field.tau_grid[:, np.newaxis])
    return residual_system(field.state, jet, prof)


def banded_max(values: NDArray[np.float64], bands: list[int]) -> float:
    """Max of ``|values|`` over each row with its edge band removed.

    ``values`` has shape ``(..., n_tau, n_lam)`` and ``bands`` one entry
    per row.
    """
    best = 0.0
    for i, band in enumerate(bands):
        row = _interior(np.abs(values[..., i, :]), band)
        best = max(best, float(np.max(row)))
    return best
