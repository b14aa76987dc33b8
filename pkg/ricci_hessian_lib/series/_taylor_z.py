"""Home of the `TaylorZ` class."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.polynomial import polynomial as P
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import Real, StateZ
from ricci_hessian_lib.exceptions import RadiusError, ValidationError
from ricci_hessian_lib.profiles import ProfileParams
from ricci_hessian_lib.jet_algebra import Jet1
from ricci_hessian_lib.series._bivariate import (
    d_lam,
    d_tau,
    multiply,
    triangle_mask,
    univariate_in_tau,
)
from ricci_hessian_lib.series._univariate import derivative_coefficients


FIELD_NAMES = ("q", "s", "b", "g")


def _triangle(c: NDArray[np.float64]) -> list[list[float]]:
    n = c.shape[0]
    return [c[i, : n - i].tolist() for i in range(n)]


def _from_triangle(
    rows: list[list[float]], order: int
) -> NDArray[np.float64]:
    c = np.zeros((order + 1, order + 1))
    if len(rows) != order + 1:
        raise ValidationError(
            f"Expected {order + 1} coefficient rows, got {len(rows)}."
        )
    for i, row in enumerate(rows):
        if len(row) != order + 1 - i:
            raise ValidationError(
                f"Row {i} has {len(row)} coefficients, expected "
                f"{order + 1 - i}."
            )
        c[i, : order + 1 - i] = row
    return c


@dataclass(slots=True, frozen=True)
class TaylorZ:
    """Truncated bivariate Taylor expansion of ``(Q, S, B, G)``.

    ``q[i, j]`` is the coefficient of ``(τ - τ*)^i (λ - λ*)^j`` in ``Q``, and
    likewise for the other fields. Entries with ``i + j > order`` vanish.

    Attributes:
        center:
            The expansion point ``(τ*, λ*)``.
        order:
            Total degree ``N`` of the expansion.
        q:
            Coefficients of ``Q``, shape ``(N+1, N+1)``.
        s:
            Coefficients of ``S``.
        b:
            Coefficients of ``B``.
        g:
            Coefficients of ``G``.
        alpha_coeffs:
            Coefficients of ``α`` in ``τ - τ*``, length ``N+1``.
        f_coeffs:
            Coefficients of ``F`` in ``τ - τ*``, length ``N+1``.
        trust_radius:
            Radius of the disc around the center where evaluation is
            allowed.
        profile:
            The coefficient profile, if known.
    """

    center: tuple[float, float]
    order: int
    q: NDArray[np.float64]
    s: NDArray[np.float64]
    b: NDArray[np.float64]
    g: NDArray[np.float64]
    alpha_coeffs: NDArray[np.float64]
    f_coeffs: NDArray[np.float64]
    trust_radius: float
    profile: ProfileParams | None = None

    def fields(self) -> tuple[NDArray[np.float64], ...]:
        """Returns ``(q, s, b, g)``."""
        return self.q, self.s, self.b, self.g

    def _offsets(self, tau: Real, lam: Real) -> tuple[Real, Real]:
        ds = np.asarray(tau, dtype=float) - self.center[0]
        dl = np.asarray(lam, dtype=float) - self.center[1]
        radius = np.hypot(ds, dl)
        if np.any(radius > self.trust_radius * (1.0 + 1e-12)):
            raise RadiusError(
                f"Point at distance {np.max(radius):.6g} from the center is "
                f"outside the trust radius {self.trust_radius:.6g}."
            )
        return ds, dl

    @staticmethod
    def _polyval(ds: Real, dl: Real, c: NDArray[np.float64]) -> Real:
        value = P.polyval2d(ds, dl, c)
        if np.ndim(value) == 0:
            return float(value)
        return value

    def evaluate(self, tau: Real, lam: Real) -> StateZ:
        """Evaluates the four series.

        Raises:
            RadiusError: If a point lies outside the trust radius.
        """
        ds, dl = self._offsets(tau, lam)
        return StateZ(*(self._polyval(ds, dl, c) for c in self.fields()))

    def evaluate_jet(self, tau: Real, lam: Real) -> tuple[StateZ, Jet1]:
        """Evaluates the series and their exact first partials.

        Raises:
            RadiusError: If a point lies outside the trust radius.
        """
        ds, dl = self._offsets(tau, lam)
        state = StateZ(*(self._polyval(ds, dl, c) for c in self.fields()))
        tau_partials = [
            self._polyval(ds, dl, d_tau(c)) for c in self.fields()
        ]
        lam_partials = [
            self._polyval(ds, dl, d_lam(c)) for c in self.fields()
        ]
        return state, Jet1(*tau_partials, *lam_partials)

    def _profile_series(self) -> tuple[NDArray[np.float64], ...]:
        n = self.order
        alpha = univariate_in_tau(self.alpha_coeffs, n)
        alpha1 = univariate_in_tau(
            derivative_coefficients(self.alpha_coeffs), n
        )
        f = univariate_in_tau(self.f_coeffs, n)
        f1 = univariate_in_tau(derivative_coefficients(self.f_coeffs), n)
        return alpha, alpha1, f, f1

    def residual_coefficients(self) -> NDArray[np.float64]:
        """Coefficients of the six equations of the reduced system with the
        series substituted.

        Only coefficients of total degree below ``order`` are meaningful
        (the derivatives lose one degree); the others are set to zero. For
        a correct expansion all returned coefficients vanish up to
        round-off.

        Returns:
            Array of shape ``(6, N+1, N+1)``.
        """
        q, s, b, g = self.fields()
        alpha, alpha1, f, f1 = self._profile_series()
        q_t, s_t, b_t, g_t = (d_tau(c) for c in self.fields())
        q_l, s_l, b_l, g_l = (d_lam(c) for c in self.fields())
        residuals = np.stack(
            [
                q_t + s_l - multiply(q, alpha) - f,
                s_t + b_l - multiply(s, alpha) - g,
                multiply(q, b_t)
                + multiply(s, b_l)
                - multiply(s, s_t)
                - multiply(b, s_l),
                multiply(s, q_t)
                + multiply(b, q_l)
                - multiply(q, s_t)
                - multiply(s, s_l),
                g_t + multiply(s, alpha1),
                g_l - multiply(q, alpha1) - f1,
            ]
        )
        mask = triangle_mask(self.order, self.order - 1)
        return np.where(mask, residuals, 0)

    def consequence_coefficients(self) -> NDArray[np.float64]:
        """Coefficients of the two consequences of the reduced system (see
        :func:`~ricci_hessian_lib.jet_algebra.residual_consequences`),
        through total degree ``order - 1``.

        Returns:
            Array of shape ``(2, N+1, N+1)``.
        """
        q, s, b, g = self.fields()
        alpha, _, f, _ = self._profile_series()
        q_t, s_t, b_t, _ = (d_tau(c) for c in self.fields())
        q_l, s_l, b_l, _ = (d_lam(c) for c in self.fields())
        pi = multiply(q, b) - multiply(s, s)
        consequences = np.stack(
            [
                multiply(q, b_t)
                + multiply(b, q_t)
                - 2.0 * multiply(s, s_t)
                - multiply(pi, alpha)
                - multiply(b, f)
                + multiply(s, g),
                multiply(q, b_l)
                + multiply(b, q_l)
                - 2.0 * multiply(s, s_l)
                - multiply(q, g)
                + multiply(s, f),
            ]
        )
        mask = triangle_mask(self.order, self.order - 1)
        return np.where(mask, consequences, 0)

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Coefficients are stored as triangles: row ``i`` holds the
        coefficients ``c[i, 0..N-i]``.
        """
        data: dict[str, Any] = {
            "center": [float(self.center[0]), float(self.center[1])],
            "order": self.order,
            "trust_radius": float(self.trust_radius),
            "alpha_coeffs": np.asarray(self.alpha_coeffs).tolist(),
            "f_coeffs": np.asarray(self.f_coeffs).tolist(),
            "profile": self.profile.to_dict() if self.profile else None,
        }
        for name, c in zip(FIELD_NAMES, self.fields()):
            data[name] = _triangle(c)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TaylorZ:
        """Creates an expansion from its JSON representation.

        Raises:
            ValidationError: If the coefficient triangles have the wrong
                shape.
        """
        order = int(data["order"])
        profile = data.get("profile")
        return cls(
            center=(float(data["center"][0]), float(data["center"][1])),
            order=order,
            q=_from_triangle(data["q"], order),
            s=_from_triangle(data["s"], order),
            b=_from_triangle(data["b"], order),
            g=_from_triangle(data["g"], order),
            alpha_coeffs=np.asarray(data["alpha_coeffs"], dtype=float),
            f_coeffs=np.asarray(data["f_coeffs"], dtype=float),
            trust_radius=float(data["trust_radius"]),
            profile=ProfileParams.from_dict(profile) if profile else None,
        )
