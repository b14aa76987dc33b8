"""Grid-refinement studies of the evolution."""

from __future__ import annotations

import dataclasses
import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from ricci_hessian_lib._orders import observed_orders
from ricci_hessian_lib._parallel import parallel_map
from ricci_hessian_lib.exceptions import (
    ConfigError,
    DegenerateStudyError,
    ValidationError,
)
from ricci_hessian_lib.profiles import ProfileParams
from ricci_hessian_lib.evolution._seed_function import (
    DEFAULT_Q_EXPRESSION,
    DEFAULT_S_EXPRESSION,
)
from ricci_hessian_lib.evolution._initial_data import generate_initial_data
from ricci_hessian_lib.evolution._grid_field import GridField
from ricci_hessian_lib.evolution._evolve import (
    EvolutionConfig,
    banded_max,
    evolve,
    system_residuals,
)


logger = logging.getLogger(__name__)

MIN_RELIABLE_POINTS = 17
MIN_STEPS = 4


@dataclass(slots=True, frozen=True)
class ConvergenceConfig:
    """Setup of a refinement study.

    All levels share the same profile, rectangle and seeds; level ``k`` uses
    ``levels[k]`` λ-points and a number of τ-steps proportional to
    ``levels[k] - 1``.

    Attributes:
        profile:
            The coefficient profile.
        tau0:
            Initial ``τ``.
        tau1:
            Final ``τ``.
        lam0:
            Lower end of the λ-range.
        lam1:
            Upper end of the λ-range.
        levels:
            Numbers of λ-points, one per level, in increasing order.
        q_fn:
            Expression of the seed of ``Q``.
        s_fn:
            Expression of the seed of ``S``.
        b0:
            Value of ``B`` at the seed node.
        g0:
            Value of ``G`` at the seed node.
        seed_lambda:
            Seed node; it must be a node of every level.
        evolution:
            Parameters passed to :func:`evolve`.
    """

    profile: ProfileParams
    tau0: float
    tau1: float
    lam0: float
    lam1: float
    levels: tuple[int, ...] = (65, 129, 257)
    q_fn: str = DEFAULT_Q_EXPRESSION
    s_fn: str = DEFAULT_S_EXPRESSION
    b0: float = 1.0
    g0: float = 0.0
    seed_lambda: float | None = None
    evolution: EvolutionConfig = field(default_factory=EvolutionConfig)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(int(n) for n in self.levels))
        if self.lam1 <= self.lam0:
            raise ConfigError("lam1 must be larger than lam0.")
        if self.tau1 == self.tau0:
            raise ConfigError("The study needs tau1 != tau0.")
        if any(n < 5 for n in self.levels):
            raise ConfigError("Every level needs at least 5 points.")


def _steps_per_level(config: ConvergenceConfig) -> list[int]:
    coarsest = min(config.levels)
    h = (config.lam1 - config.lam0) / (coarsest - 1)
    step = config.evolution.cfl * h
    base = max(MIN_STEPS, math.ceil(abs(config.tau1 - config.tau0) / step))
    return [
        max(MIN_STEPS, round(base * (n - 1) / (coarsest - 1)))
        for n in config.levels
    ]


def _run_level(args: tuple[ConvergenceConfig, int, int]) -> GridField:
    config, n_lam, n_steps = args
    grid = np.linspace(config.lam0, config.lam1, n_lam)
    initial = generate_initial_data(
        config.profile,
        config.tau0,
        grid,
        config.q_fn,
        config.s_fn,
        config.b0,
        config.g0,
        config.seed_lambda,
    )
    result = evolve(initial, config.tau1, n_steps, config.evolution)
    logger.debug("Finished level n_lam=%d (%d steps).", n_lam, n_steps)
    return result


def _difference(coarse: GridField, fine: GridField, band: int) -> float:
    if (fine.n_lam - 1) % (coarse.n_lam - 1) != 0:
        logger.warning(
            "Levels %d and %d are not nested; skipping the solution "
            "difference.",
            coarse.n_lam,
            fine.n_lam,
        )
        return math.nan
    if coarse.truncated or fine.truncated:
        return math.nan
    ratio = (fine.n_lam - 1) // (coarse.n_lam - 1)
    diff = np.stack(
        [
            fine_values[-1, ::ratio] - coarse_values[-1]
            for coarse_values, fine_values in zip(
                coarse.fields(), fine.fields()
            )
        ]
    )
    return banded_max(diff[:, np.newaxis, :], [band])


def convergence_study(config: ConvergenceConfig) -> pd.DataFrame:
    """Runs the evolution at several resolutions and measures the observed
    convergence orders.

    For every level the table reports the norms of ``C1`` and ``C2`` on the
    final slice, the max of :func:`system_residuals` over the grid, and the
    difference between the final slices of consecutive levels (on the
    common nodes). Norms exclude the edge bands of :func:`evolve`.
    Orders between consecutive levels are computed from the λ spacings.

    Levels with fewer than 17 points are flagged as unreliable and a
    warning is issued. Levels run through a parallel map capped by
    ``SRH_THREADS``.

    Args:
        config:
            The study setup.

    Returns:
        A :class:`pandas.DataFrame` with one row per level and the columns
        ``n_lam``, ``h``, ``n_steps``, ``truncated``, ``c1``, ``c2``,
        ``constraint``, ``system_residual``, ``difference``,
        ``order_constraint``, ``order_system``, ``order_difference`` and
        ``reliable``.

    Raises:
        DegenerateStudyError: If fewer than two levels are given or a
            level is repeated.
    """
    levels = config.levels
    if len(levels) < 2:
        raise DegenerateStudyError("A study needs at least two levels.")
    if len(set(levels)) != len(levels):
        raise DegenerateStudyError(
            f"Repeated resolutions in {list(levels)}."
        )
    order = np.argsort(levels)
    levels = tuple(levels[i] for i in order)
    config = dataclasses.replace(config, levels=levels)
    steps = _steps_per_level(config)
    logger.info("Convergence study with levels %s.", list(levels))
    fields = parallel_map(
        _run_level, [(config, n, k) for n, k in zip(levels, steps)]
    )

    rows = []
    previous: GridField | None = None
    for n_lam, n_steps, grid_field in zip(levels, steps, fields):
        band = grid_field.edge_bands[-1]
        c1, c2 = grid_field.constraint_history[-1]
        try:
            system = banded_max(
                system_residuals(grid_field), grid_field.edge_bands
            )
        except ValidationError:
            system = math.nan
        difference = (
            math.nan
            if previous is None
            else _difference(previous, grid_field, previous.edge_bands[-1])
        )
        reliable = (
            n_lam >= MIN_RELIABLE_POINTS
            and n_lam - 2 * band >= 5
            and not grid_field.truncated
        )
        if not reliable:
            warnings.warn(
                f"Level n_lam={n_lam} is too coarse (or truncated) for a "
                "reliable order estimate.",
                stacklevel=2,
            )
        rows.append(
            {
                "n_lam": n_lam,
                "h": grid_field.lambda_spacing,
                "n_steps": n_steps,
                "truncated": grid_field.truncated,
                "c1": float(c1),
                "c2": float(c2),
                "constraint": float(max(c1, c2)),
                "system_residual": system,
                "difference": difference,
                "reliable": reliable,
            }
        )
        previous = grid_field

    table = pd.DataFrame(rows)
    spacings = table["h"].to_numpy()
    table["order_constraint"] = observed_orders(table["constraint"], spacings)
    table["order_system"] = observed_orders(
        table["system_residual"], spacings
    )
    table["order_difference"] = observed_orders(
        table["difference"], spacings
    )
    logger.info("Convergence study finished:\n%s", table.to_string())
    return table
