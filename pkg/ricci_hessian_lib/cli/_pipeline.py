"""The stages of an ``srh run`` and the artifacts they write."""

from __future__ import annotations

import dataclasses
import json
import logging
import os
from dataclasses import dataclass, field
from importlib import metadata
from typing import Any

import numpy as np
import pandas as pd

import ricci_hessian_lib
from ricci_hessian_lib._state_z import StateZ
from ricci_hessian_lib.exceptions import RicciHessianLibError
from ricci_hessian_lib.profiles import ProfileParams
from ricci_hessian_lib.evolution import (
    CSV_FLOAT_FORMAT,
    ConvergenceConfig,
    GridField,
    convergence_study,
    evolve,
    generate_initial_data,
)
from ricci_hessian_lib.series import TaylorZ, seed_series, taylor_extend
from ricci_hessian_lib.geometry import (
    ChartData,
    GeometryReport,
    geometry_convergence_study,
    reconstruct_coords,
    resample_chart,
    verify_ricci_hessian,
)
from ricci_hessian_lib.cli._exit_codes import (
    ExitCode,
    exit_code_for,
    exit_code_for_truncation,
)
from ricci_hessian_lib.cli._run_config import (
    SCHEMA_VERSION,
    GatesSection,
    GridSection,
    RunConfig,
)
from ricci_hessian_lib.cli._schemas import validate_report


logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"
REPORT_FILE = "report.json"
TAYLOR_FILE = "taylor.json"
CONVERGENCE_FILE = "convergence.csv"
GEOMETRY_CONVERGENCE_FILE = "geometry_convergence.csv"
FIELD_DIR = "field"
CHART_DIR = "chart"
RESAMPLED_DIR = "resampled"
VERIFICATION_DIR = "verification"
VERSIONED_PACKAGES = ("numpy", "scipy", "pandas", "sympy", "jsonschema")


@dataclass(slots=True)
class RunResult:
    """Outcome of :func:`run`.

    Attributes:
        exit_code:
            The process exit code.
        output_dir:
            Directory holding the artifacts.
        artifacts:
            Paths of the files written, relative to ``output_dir``.
        summary:
            Residual summary, also stored in ``manifest.json``.
    """

    exit_code: ExitCode
    output_dir: str
    artifacts: list[str] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)


def package_versions() -> dict[str, str | None]:
    """Versions of this package and of its numerical dependencies."""
    versions: dict[str, str | None] = {
        "ricci_hessian_lib": ricci_hessian_lib.__version__
    }
    for name in VERSIONED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return versions


def write_json(path: str | os.PathLike, data: Any) -> None:
    """Writes ``data`` as indented JSON."""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)


def write_frames(
    output_dir: str, subdirectory: str, frames: dict[str, pd.DataFrame]
) -> list[str]:
    """Writes one CSV per table under ``output_dir/subdirectory``.

    Returns:
        The paths written, relative to ``output_dir``.
    """
    os.makedirs(os.path.join(output_dir, subdirectory), exist_ok=True)
    written = []
    for name, frame in frames.items():
        relative = os.path.join(subdirectory, f"{name}.csv")
        frame.to_csv(
            os.path.join(output_dir, relative),
            index=False,
            float_format=CSV_FLOAT_FORMAT,
        )
        written.append(relative)
    return written


def solve(config: RunConfig) -> GridField:
    """Generates the initial data and evolves them over the rectangle.

    Positivity failures and blow-ups truncate the grid instead of raising.
    """
    grid = config.grid
    seeds = config.seeds
    lambda_grid = np.linspace(grid.lam0, grid.lam1, grid.n_lam)
    initial = generate_initial_data(
        config.profile,
        grid.tau0,
        lambda_grid,
        seeds.q_fn,
        seeds.s_fn,
        seeds.b0,
        seeds.g0,
        seeds.seed_lambda,
    )
    return evolve(initial, grid.tau1, grid.n_steps)


def series_check(
    config: RunConfig, grid_field: GridField, order: int | None = None
) -> tuple[TaylorZ, dict[str, Any]]:
    """Expands the solution at the middle node of the initial slice and
    compares the expansion with the grid.

    The comparison uses the grid points within half the trust radius of the
    center, outside the edge band of their slice.

    Returns:
        The expansion and a summary with the number of points compared and
        the largest difference over the four fields (``None`` without
        points).
    """
    order = order if order is not None else config.checks.series_order
    if order is None:
        raise ValueError("No series order given.")
    j = grid_field.n_lam // 2
    tau_star = float(grid_field.tau_grid[0])
    lambda_star = float(grid_field.lambda_grid[j])
    center = StateZ(*(float(values[0, j]) for values in grid_field.fields()))
    seeds = seed_series(
        config.seeds.q_fn, config.seeds.s_fn, lambda_star, order
    )
    expansion = taylor_extend(
        center,
        config.profile,
        tau_star,
        None,
        None,
        order,
        seed_lambda_series=seeds,
        lambda_star=lambda_star,
    )

    tau_mesh, lam_mesh = np.meshgrid(
        grid_field.tau_grid, grid_field.lambda_grid, indexing="ij"
    )
    bands = np.asarray(
        grid_field.edge_bands or [0] * grid_field.n_tau
    ).reshape(-1, 1)
    columns = np.arange(grid_field.n_lam)
    inside = (
        np.hypot(tau_mesh - tau_star, lam_mesh - lambda_star)
        <= expansion.trust_radius / 2
    )
    inside &= (columns >= bands) & (columns < grid_field.n_lam - bands)

    difference = None
    if np.any(inside):
        values = expansion.evaluate(tau_mesh[inside], lam_mesh[inside])
        difference = max(
            float(np.max(np.abs(np.asarray(approx) - exact[inside])))
            for approx, exact in zip(values.fields(), grid_field.fields())
        )
    summary = {
        "center": [tau_star, lambda_star],
        "order": order,
        "trust_radius": expansion.trust_radius,
        "points": int(np.count_nonzero(inside)),
        "max_difference": difference,
    }
    logger.info(
        "Series of order %d at (%g, %g): %d points compared, max "
        "difference %s.",
        order,
        tau_star,
        lambda_star,
        summary["points"],
        difference,
    )
    return expansion, summary


def verify_field(
    grid_field: GridField,
    profile: ProfileParams,
    resample_n: int,
    with_curvature_oracle: bool = False,
) -> tuple[ChartData, GeometryReport]:
    """Reconstructs, resamples and verifies the chart of a solved grid."""
    chart = reconstruct_coords(grid_field)
    chart = chart.with_resampled(resample_chart(chart, resample_n))
    report = verify_ricci_hessian(
        chart, profile, with_curvature_oracle=with_curvature_oracle
    )
    return chart, report


def _gate(value: float, threshold: float | None, hard: bool) -> dict:
    passed = threshold is None or bool(value <= threshold)
    return {
        "value": value,
        "threshold": threshold,
        "passed": passed,
        "hard": hard,
    }


def evaluate_gates(
    gates: GatesSection, report: GeometryReport
) -> dict[str, dict[str, Any]]:
    """Compares the report with the acceptance thresholds.

    Only the closedness gate is hard. Soft gates without a threshold always
    pass.
    """
    results = {
        "closedness": _gate(
            max(report.closedness.values()), gates.closedness, True
        ),
        "rh_residual": _gate(
            report.rh_residual_max, gates.rh_residual, False
        ),
        "theta_kappa": _gate(
            max(
                report.theta.relative_deviation,
                report.kappa.relative_deviation,
            ),
            gates.theta_kappa,
            False,
        ),
    }
    for name, result in results.items():
        if not result["passed"]:
            logger.warning(
                "Gate %s failed: %.3e > %.3e.",
                name,
                result["value"],
                result["threshold"],
            )
    return results


def build_report(
    profile: ProfileParams,
    report: GeometryReport,
    gates: dict[str, dict[str, Any]],
) -> dict[str, Any]:
    """Assembles the ``report.json`` document.

    Raises:
        ValidationError: If the document does not match
            ``report.schema.json``.
    """
    document = {
        "schema_version": SCHEMA_VERSION,
        "profile": profile.to_dict(),
        "geometry": report.to_dict(),
        "gates": gates,
    }
    validate_report(document)
    return document


def level_config(config: RunConfig, n_lam: int) -> RunConfig:
    """The configuration of one level of a refinement study.

    The number of τ-steps follows the CFL rule of the evolution.
    """
    grid = dataclasses.replace(config.grid, n_lam=n_lam, n_tau=None)
    return dataclasses.replace(config, grid=grid)


def convergence_pass(
    config: RunConfig, levels: tuple[int, ...] | None = None
) -> tuple[pd.DataFrame, pd.DataFrame]:
    """Runs the evolution and geometry refinement studies.

    The geometry study resamples level ``k`` with a number of intervals
    proportional to ``levels[k] - 1``, so that resampled spacings shrink
    with the grid.

    Returns:
        The evolution table and the geometry table.
    """
    levels = tuple(sorted(levels or config.checks.convergence_levels))
    grid: GridSection = config.grid
    seeds = config.seeds
    evolution_table = convergence_study(
        ConvergenceConfig(
            profile=config.profile,
            tau0=grid.tau0,
            tau1=grid.tau1,
            lam0=grid.lam0,
            lam1=grid.lam1,
            levels=levels,
            q_fn=seeds.q_fn,
            s_fn=seeds.s_fn,
            b0=seeds.b0,
            g0=seeds.g0,
            seed_lambda=seeds.seed_lambda,
        )
    )
    fields = [solve(level_config(config, n)) for n in levels]
    base = config.checks.resample_n
    sizes = [
        max(base, round((base - 1) * (n - 1) / (levels[0] - 1)) + 1)
        for n in levels
    ]
    geometry_table = geometry_convergence_study(
        fields,
        config.profile,
        sizes,
        with_curvature_oracle=config.checks.curvature_oracle,
    )
    return evolution_table, geometry_table


def _summary(
    grid_field: GridField | None,
    report: GeometryReport | None,
    series: dict[str, Any] | None,
) -> dict[str, Any]:
    summary: dict[str, Any] = {}
    if grid_field is not None:
        c1, c2 = grid_field.constraint_history[-1]
        summary["verified_tau_range"] = list(grid_field.verified_tau_range)
        summary["verified_lambda_range"] = list(
            grid_field.verified_lambda_range
        )
        summary["final_c1"] = float(c1)
        summary["final_c2"] = float(c2)
    if report is not None:
        summary["rh_residual"] = report.rh_residual_max
        summary["closedness"] = max(report.closedness.values())
        summary["theta_deviation"] = report.theta.relative_deviation
        summary["kappa_deviation"] = report.kappa.relative_deviation
    if series is not None:
        summary["series_difference"] = series["max_difference"]
    return summary


def run(config: RunConfig) -> RunResult:
    """Runs every stage of a configuration and writes the artifacts.

    The stages are: initial data and evolution (``field/``), the optional
    series cross-check (``taylor.json``), reconstruction and verification
    of the chart (``chart/``, ``resampled/``, ``verification/``,
    ``report.json``) and the optional refinement studies
    (``convergence.csv``, ``geometry_convergence.csv``).
    ``manifest.json`` is always written last, also when a stage fails.

    Library errors are not raised; they set the exit code and are recorded
    in the manifest. A truncated evolution stops the run after the field
    is saved.
    """
    output_dir = config.output_dir
    os.makedirs(output_dir, exist_ok=True)
    result = RunResult(ExitCode.LIBRARY_ERROR, output_dir)
    grid_field: GridField | None = None
    report: GeometryReport | None = None
    series: dict[str, Any] | None = None
    error = None
    try:
        grid_field = solve(config)
        result.artifacts.extend(
            os.path.join(FIELD_DIR, name)
            for name in grid_field.save(os.path.join(output_dir, FIELD_DIR))
        )
        if grid_field.truncated:
            result.exit_code = exit_code_for_truncation(
                grid_field.truncation_reason
            )
            return result

        if config.checks.series_order is not None:
            expansion, series = series_check(config, grid_field)
            write_json(
                os.path.join(output_dir, TAYLOR_FILE),
                {"expansion": expansion.to_dict(), "comparison": series},
            )
            result.artifacts.append(TAYLOR_FILE)

        chart, report = verify_field(
            grid_field,
            config.profile,
            config.checks.resample_n,
            config.checks.curvature_oracle,
        )
        result.artifacts.extend(
            write_frames(output_dir, CHART_DIR, chart.to_frames())
        )
        if chart.resampled is not None:
            result.artifacts.extend(
                write_frames(
                    output_dir, RESAMPLED_DIR, chart.resampled.to_frames()
                )
            )
        result.artifacts.extend(
            write_frames(output_dir, VERIFICATION_DIR, report.to_frames())
        )
        gates = evaluate_gates(config.gates, report)
        write_json(
            os.path.join(output_dir, REPORT_FILE),
            build_report(config.profile, report, gates),
        )
        result.artifacts.append(REPORT_FILE)

        if config.checks.convergence_levels:
            evolution_table, geometry_table = convergence_pass(config)
            for filename, table in (
                (CONVERGENCE_FILE, evolution_table),
                (GEOMETRY_CONVERGENCE_FILE, geometry_table),
            ):
                table.to_csv(
                    os.path.join(output_dir, filename),
                    index=False,
                    float_format=CSV_FLOAT_FORMAT,
                )
                result.artifacts.append(filename)

        result.exit_code = (
            ExitCode.OK
            if gates["closedness"]["passed"]
            else ExitCode.CLOSEDNESS
        )
    except RicciHessianLibError as e:
        logger.error("Run failed: %s: %s", type(e).__name__, e)
        error = f"{type(e).__name__}: {e}"
        result.exit_code = exit_code_for(e)
    finally:
        result.summary = _summary(grid_field, report, series)
        manifest = {
            "inputs": config.to_dict(),
            "versions": package_versions(),
            "summary": result.summary,
            "truncated": bool(grid_field is not None and grid_field.truncated),
            "truncation_reason": (
                grid_field.truncation_reason if grid_field else None
            ),
            "error": error,
            "artifacts": list(result.artifacts),
            "exit_code": int(result.exit_code),
        }
        write_json(os.path.join(output_dir, MANIFEST_FILE), manifest)
        result.artifacts.append(MANIFEST_FILE)
    logger.info(
        "Run finished with exit code %d (%s).",
        result.exit_code,
        result.exit_code.name,
    )
    return result
