"""Home of the `RunConfig` class."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any

from ricci_hessian_lib.exceptions import ConfigError
from ricci_hessian_lib.profiles import ProfileParams, check_tau_range
from ricci_hessian_lib.evolution import (
    DEFAULT_Q_EXPRESSION,
    DEFAULT_S_EXPRESSION,
    SeedFunction,
)
from ricci_hessian_lib.cli._schemas import validate_run_config


SCHEMA_VERSION = 1
MIN_LAMBDA_POINTS = 33
DEFAULT_OUTPUT_DIR = "srh_output"


@dataclass(slots=True, frozen=True)
class GridSection:
    """The ``(τ, λ)`` rectangle and its resolution.

    Attributes:
        tau0:
            Initial ``τ``.
        tau1:
            Final ``τ``.
        lam0:
            Lower end of the λ-range.
        lam1:
            Upper end of the λ-range.
        n_lam:
            Number of λ-points, at least 33.
        n_tau:
            Number of slices, or ``None`` to let the CFL rule decide.
    """

    tau0: float
    tau1: float
    lam0: float
    lam1: float
    n_lam: int = 65
    n_tau: int | None = None

    def __post_init__(self):
        if self.n_lam < MIN_LAMBDA_POINTS:
            raise ConfigError(
                f"n_lam must be at least {MIN_LAMBDA_POINTS}, got "
                f"{self.n_lam}."
            )
        if self.lam1 <= self.lam0:
            raise ConfigError("lam1 must be larger than lam0.")
        if self.tau1 == self.tau0:
            raise ConfigError("tau1 must differ from tau0.")
        if self.n_tau is not None and self.n_tau < 5:
            raise ConfigError(f"n_tau must be at least 5, got {self.n_tau}.")

    @property
    def n_steps(self) -> int | None:
        """Number of τ-steps, if fixed."""
        return None if self.n_tau is None else self.n_tau - 1


@dataclass(slots=True, frozen=True)
class SeedSection:
    """Seeds of the initial data.

    Attributes:
        q_fn:
            Expression of ``Q`` on the initial line.
        s_fn:
            Expression of ``S`` on the initial line.
        b0:
            ``B`` at the seed node.
        g0:
            ``G`` at the seed node.
        seed_lambda:
            The seed node, ``None`` for the default.
    """

    q_fn: str = DEFAULT_Q_EXPRESSION
    s_fn: str = DEFAULT_S_EXPRESSION
    b0: float = 1.0
    g0: float = 0.0
    seed_lambda: float | None = None

    def __post_init__(self):
        # Raises ConfigError for expressions outside the grammar.
        SeedFunction.from_expression(self.q_fn)
        SeedFunction.from_expression(self.s_fn)


@dataclass(slots=True, frozen=True)
class ChecksSection:
    """Optional passes of a run.

    Attributes:
        series_order:
            Order of the Taylor cross-check, ``None`` to skip it.
        resample_n:
            Points per axis of the resampled chart.
        convergence_levels:
            λ-resolutions of the convergence study; empty to skip it.
        curvature_oracle:
            Whether to compute the Ricci tensor directly.
    """

    series_order: int | None = 6
    resample_n: int = 65
    convergence_levels: tuple[int, ...] = ()
    curvature_oracle: bool = False

    def __post_init__(self):
        object.__setattr__(
            self,
            "convergence_levels",
            tuple(int(n) for n in self.convergence_levels),
        )


@dataclass(slots=True, frozen=True)
class GatesSection:
    """Acceptance thresholds.

    ``closedness`` is a hard gate; the other two are only reported.

    Attributes:
        closedness:
            Largest accepted loop residual of the chart.
        rh_residual:
            Threshold of the Ricci-Hessian residual.
        theta_kappa:
            Threshold of the relative spread of ``θ`` and ``κ``.
    """

    closedness: float = 1e-6
    rh_residual: float | None = None
    theta_kappa: float | None = None


@dataclass(slots=True, frozen=True)
class RunConfig:
    """Everything a run needs.

    Attributes:
        profile:
            The coefficient profile.
        grid:
            The rectangle and resolution.
        seeds:
            The initial data.
        checks:
            Optional passes.
        gates:
            Acceptance thresholds.
        output_dir:
            Directory of the artifacts.
        schema_version:
            Version of the configuration format.

    Raises:
        DomainError: If the τ-range of the grid reaches a pole.
    """

    profile: ProfileParams
    grid: GridSection
    seeds: SeedSection = field(default_factory=SeedSection)
    checks: ChecksSection = field(default_factory=ChecksSection)
    gates: GatesSection = field(default_factory=GatesSection)
    output_dir: str = DEFAULT_OUTPUT_DIR
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        check_tau_range(self.profile, self.grid.tau0, self.grid.tau1)

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation."""
        return {
            "schema_version": self.schema_version,
            "profile": self.profile.to_dict(),
            "grid": {
                "tau0": self.grid.tau0,
                "tau1": self.grid.tau1,
                "lam0": self.grid.lam0,
                "lam1": self.grid.lam1,
                "n_tau": self.grid.n_tau,
                "n_lam": self.grid.n_lam,
            },
            "seeds": {
                "q_fn": self.seeds.q_fn,
                "s_fn": self.seeds.s_fn,
                "b0": self.seeds.b0,
                "g0": self.seeds.g0,
                "seed_lambda": self.seeds.seed_lambda,
            },
            "checks": {
                "series_order": self.checks.series_order,
                "resample_n": self.checks.resample_n,
                "convergence_levels": list(self.checks.convergence_levels),
                "curvature_oracle": self.checks.curvature_oracle,
            },
            "gates": {
                "closedness": self.gates.closedness,
                "rh_residual": self.gates.rh_residual,
                "theta_kappa": self.gates.theta_kappa,
            },
            "output_dir": self.output_dir,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunConfig:
        """Creates a configuration from its JSON representation.

        Raises:
            ConfigError: If ``data`` does not match
                ``run_config.schema.json`` or fails validation.
            DomainError: If the τ-range of the grid reaches a pole.
        """
        validate_run_config(data)
        return cls(
            profile=ProfileParams.from_dict(data["profile"]),
            grid=GridSection(**data["grid"]),
            seeds=SeedSection(**data.get("seeds", {})),
            checks=ChecksSection(**data.get("checks", {})),
            gates=GatesSection(**data.get("gates", {})),
            output_dir=data.get("output_dir", DEFAULT_OUTPUT_DIR),
            schema_version=data.get("schema_version", SCHEMA_VERSION),
        )

    @classmethod
    def from_json(cls, path: str | os.PathLike) -> RunConfig:
        """Reads a configuration file.

        Raises:
            ConfigError: If the file cannot be read or is invalid.
            DomainError: If the τ-range of the grid reaches a pole.
        """
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Could not read {path}: {e}") from e
        return cls.from_dict(data)
