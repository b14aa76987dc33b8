"""Home of the `ResampledChart` class."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import StateZ
from ricci_hessian_lib._stencils import gradient2, second_difference
from ricci_hessian_lib.evolution import field_frame


RESAMPLED_FIELD_NAMES = ("tau", "lambda", "Q", "S", "B", "G", "Pi", "phi")


@dataclass(slots=True, frozen=True)
class ResampledChart:
    """A chart sampled on a uniform grid of the coordinates ``(x, u)``.

    Arrays are indexed ``[i, k]`` with ``x[i]`` and ``u[k]``. The outer
    ``guard`` rows and columns only serve the finite-difference stencils;
    reported norms use :meth:`interior`.

    Attributes:
        x:
            Uniform ``x`` axis.
        u:
            Uniform ``u`` axis.
        tau:
            ``τ`` at the grid points.
        lam:
            ``λ`` at the grid points.
        q:
            ``Q`` at the grid points.
        s:
            ``S`` at the grid points.
        b:
            ``B`` at the grid points.
        g:
            ``G`` at the grid points.
        phi:
            The potential at the grid points.
        rectangle:
            ``(x0, x1, u0, u1)``, the covered rectangle.
        guard:
            Number of guard cells on each side.
        inversion_residual:
            Largest ``(x, u)`` mismatch left by the chart inversion.
    """

    x: NDArray[np.float64]
    u: NDArray[np.float64]
    tau: NDArray[np.float64]
    lam: NDArray[np.float64]
    q: NDArray[np.float64]
    s: NDArray[np.float64]
    b: NDArray[np.float64]
    g: NDArray[np.float64]
    phi: NDArray[np.float64]
    rectangle: tuple[float, float, float, float]
    guard: int = 2
    inversion_residual: float = 0.0

    @property
    def hx(self) -> float:
        """Spacing of the ``x`` axis."""
        return float(self.x[1] - self.x[0])

    @property
    def hu(self) -> float:
        """Spacing of the ``u`` axis."""
        return float(self.u[1] - self.u[0])

    @property
    def spacing(self) -> float:
        """The larger of the two spacings."""
        return max(self.hx, self.hu)

    @property
    def pi(self) -> NDArray[np.float64]:
        """``Π = QB - S²``."""
        return self.q * self.b - self.s * self.s

    @property
    def state(self) -> StateZ:
        """The unknowns as a :class:`~ricci_hessian_lib.StateZ`."""
        return StateZ(self.q, self.s, self.b, self.g)

    def interior(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """Drops the guard cells of the last two axes."""
        k = self.guard
        if k == 0:
            return values
        return values[..., k:-k, k:-k]

    def d_x(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """Second-order ``∂_x``."""
        return gradient2(values, self.hx, axis=0)

    def d_u(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """Second-order ``∂_u``."""
        return gradient2(values, self.hu, axis=1)

    def d_xx(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """Second-order ``∂_x²``."""
        return second_difference(values, self.hx, axis=0)

    def d_uu(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """Second-order ``∂_u²``."""
        return second_difference(values, self.hu, axis=1)

    def d_xu(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """Second-order mixed derivative."""
        return self.d_u(self.d_x(values))

    def potential_residuals(self) -> dict[str, float]:
        """Max-norms over the interior of the identities linking the
        potential to the unknowns.

        ``phi_x``, ``phi_u``, ``phi_xx``, ``phi_xu`` and ``phi_uu`` compare
        finite differences of the potential with ``τ``, ``λ``, ``Q``, ``S``
        and ``B``; ``mixed`` compares ``τ_u`` with ``λ_x``.
        """
        phi = self.phi
        residuals = {
            "phi_x": self.d_x(phi) - self.tau,
            "phi_u": self.d_u(phi) - self.lam,
            "phi_xx": self.d_xx(phi) - self.q,
            "phi_xu": self.d_xu(phi) - self.s,
            "phi_uu": self.d_uu(phi) - self.b,
            "mixed": self.d_u(self.tau) - self.d_x(self.lam),
        }
        return {
            name: float(np.max(np.abs(self.interior(values))))
            for name, values in residuals.items()
        }

    def fields(self) -> dict[str, NDArray[np.float64]]:
        """The sampled fields by name."""
        values = (
            self.tau,
            self.lam,
            self.q,
            self.s,
            self.b,
            self.g,
            self.pi,
            self.phi,
        )
        return dict(zip(RESAMPLED_FIELD_NAMES, values))

    def to_frames(self) -> dict[str, pd.DataFrame]:
        """Long-format tables ``(x, u, value)``, one per field."""
        return {
            name: field_frame(self.x, self.u, values, columns=("x", "u"))
            for name, values in self.fields().items()
        }
