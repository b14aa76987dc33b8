"""Home of the `Slice` class."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import StateZ
from ricci_hessian_lib._stencils import derivative4, is_uniform
from ricci_hessian_lib.exceptions import ConfigError
from ricci_hessian_lib.profiles import ProfileEval, ProfileParams, eval_profile


MIN_GRID_POINTS = 5


class SliceDiagnostics(NamedTuple):
    """Admissibility diagnostics of a slice.

    Attributes:
        min_q: Minimum of ``Q``.
        min_pi: Minimum of ``Π = QB - S²``.
        min_abs_q_lam: Minimum of ``|Q_λ|`` over interior points, with
            ``Q_λ`` computed by fourth-order finite differences.
    """

    min_q: float
    min_pi: float
    min_abs_q_lam: float


def check_lambda_grid(lambda_grid: NDArray[np.float64]) -> float:
    """Checks that a λ-grid is uniform and long enough for fourth-order
    stencils.

    Returns:
        The grid spacing.

    Raises:
        ConfigError: If the grid is not uniform or has fewer than five
            points.
    """
    grid = np.asarray(lambda_grid, dtype=float)
    if grid.ndim != 1 or grid.size < MIN_GRID_POINTS:
        raise ConfigError(
            f"The lambda grid needs at least {MIN_GRID_POINTS} points."
        )
    if not is_uniform(grid):
        raise ConfigError("The lambda grid must be uniform and increasing.")
    return float(grid[1] - grid[0])


@dataclass(slots=True, frozen=True)
class Slice:
    """The unknowns on the line ``τ = tau`` of a uniform λ-grid.

    Attributes:
        tau:
            The value of ``τ``.
        lambda_grid:
            Uniform grid of at least five points.
        state:
            :class:`StateZ` whose fields are arrays over ``lambda_grid``.
        profile:
            The coefficient profile.
    """

    tau: float
    lambda_grid: NDArray[np.float64]
    state: StateZ
    profile: ProfileParams

    def __post_init__(self):
        check_lambda_grid(self.lambda_grid)
        shape = np.shape(self.lambda_grid)
        for name, values in zip("QSBG", self.state.fields()):
            if np.shape(values) != shape:
                raise ConfigError(
                    f"Field {name} has shape {np.shape(values)}, expected "
                    f"{shape}."
                )

    @property
    def spacing(self) -> float:
        """The λ spacing."""
        return float(self.lambda_grid[1] - self.lambda_grid[0])

    @property
    def n_lam(self) -> int:
        """Number of grid points."""
        return int(self.lambda_grid.size)

    def profile_eval(self) -> ProfileEval:
        """Evaluates the profile at ``tau``."""
        return eval_profile(self.profile, self.tau)

    def lambda_derivatives(self) -> StateZ:
        """Fourth-order λ-derivatives of the four fields."""
        return StateZ(
            *(derivative4(f, self.spacing) for f in self.state.fields())
        )

    def diagnostics(self) -> SliceDiagnostics:
        """Returns the admissibility diagnostics of the slice."""
        q_lam = derivative4(self.state.Q, self.spacing)
        return SliceDiagnostics(
            min_q=float(np.min(self.state.Q)),
            min_pi=float(np.min(self.state.pi)),
            min_abs_q_lam=float(np.min(np.abs(q_lam[1:-1]))),
        )
