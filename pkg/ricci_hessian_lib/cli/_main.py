"""The ``srh`` command."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from collections.abc import Sequence
from typing import Any

import numpy as np

from ricci_hessian_lib._state_z import StateZ
from ricci_hessian_lib.exceptions import ConfigError, RicciHessianLibError
from ricci_hessian_lib.profiles import (
    ProfileEval,
    ProfileParams,
    eval_profile,
)
from ricci_hessian_lib.jet_algebra import (
    Direction,
    RateZ,
    invert_phi,
    solve_jet,
)
from ricci_hessian_lib.evolution import CSV_FLOAT_FORMAT, GridField
from ricci_hessian_lib.cli._exit_codes import (
    ExitCode,
    exit_code_for,
    exit_code_for_truncation,
)
from ricci_hessian_lib.cli._run_config import (
    GatesSection,
    RunConfig,
)
from ricci_hessian_lib.cli._schemas import RUN_CONFIG_SCHEMA, schema_text
from ricci_hessian_lib.cli._pipeline import (
    CONVERGENCE_FILE,
    FIELD_DIR,
    GEOMETRY_CONVERGENCE_FILE,
    TAYLOR_FILE,
    build_report,
    convergence_pass,
    evaluate_gates,
    run,
    series_check,
    solve,
    verify_field,
    write_json,
)


logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _floats(text: str, count: int, name: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError as e:
        raise ConfigError(f"{name} must be numbers, got {text!r}.") from e
    if len(values) != count:
        raise ConfigError(
            f"{name} needs {count} comma-separated values, got {text!r}."
        )
    return values


def _ints(text: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as e:
        raise ConfigError(
            f"{name} must be comma-separated integers, got {text!r}."
        ) from e

def _print_json(data: Any) -> None:
    print(json.dumps(data, indent=2))


def _load_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.from_json(args.config)
    if getattr(args, "output_dir", None):
        config = dataclasses.replace(config, output_dir=args.output_dir)
    return config


def _run(args: argparse.Namespace) -> int:
    result = run(_load_config(args))
    _print_json(
        {
            "exit_code": int(result.exit_code),
            "output_dir": result.output_dir,
            "summary": result.summary,
        }
    )
    return result.exit_code


def _profiles(args: argparse.Namespace) -> int:
    params = ProfileParams(
        family=args.family,
        theta=args.theta,
        kappa=args.kappa,
        param=args.param,
        affine_c=args.affine_c,
        affine_p=args.affine_p,
    )
    tau = args.tau[0] if len(args.tau) == 1 else np.asarray(args.tau)
    _print_json(
        {
            "profile": params.to_dict(),
            "tau": args.tau,
            "values": eval_profile(params, tau).to_dict(),
        }
    )
    return ExitCode.OK


def _jets(args: argparse.Namespace) -> int:
    z = StateZ(*_floats(args.state, 4, "--state"))
    prof = ProfileEval.from_values(args.alpha, args.alpha1, args.F, args.F1)
    if args.q_partials is not None:
        q_tau, q_lam = _floats(args.q_partials, 2, "--q-partials")
        jet = solve_jet(z, prof, q_tau, q_lam)
    else:
        if args.direction is None or args.rate is None:
            raise ConfigError(
                "Either --q-partials or both --direction and --rate are "
                "required."
            )
        direction = Direction(*_floats(args.direction, 2, "--direction"))
        rate = RateZ(*_floats(args.rate, 4, "--rate"))
        jet = invert_phi(z, prof, direction, rate)
    _print_json(
        {name: float(value) for name, value in dataclasses.asdict(jet).items()}
    )
    return ExitCode.OK


def _solve(args: argparse.Namespace) -> int:
    config = _load_config(args)
    grid_field = solve(config)
    grid_field.save(os.path.join(config.output_dir, FIELD_DIR))
    c1, c2 = grid_field.constraint_history[-1]
    _print_json(
        {
            "n_tau": grid_field.n_tau,
            "n_lam": grid_field.n_lam,
            "verified_tau_range": list(grid_field.verified_tau_range),
            "verified_lambda_range": list(grid_field.verified_lambda_range),
            "final_c1": float(c1),
            "final_c2": float(c2),
            "truncated": grid_field.truncated,
            "truncation_reason": grid_field.truncation_reason,
        }
    )
    if grid_field.truncated:
        return exit_code_for_truncation(grid_field.truncation_reason)
    return ExitCode.OK


def _verify(args: argparse.Namespace) -> int:
    directory = args.input
    if os.path.isdir(os.path.join(directory, FIELD_DIR)):
        directory = os.path.join(directory, FIELD_DIR)
    grid_field = GridField.load(directory)
    _, report = verify_field(
        grid_field,
        grid_field.profile,
        args.resample_n,
        args.curvature_oracle,
    )
    gates = evaluate_gates(
        GatesSection(closedness=args.closedness), report
    )
    _print_json(build_report(grid_field.profile, report, gates))
    if not gates["closedness"]["passed"]:
        return ExitCode.CLOSEDNESS
    return ExitCode.OK


def _series(args: argparse.Namespace) -> int:
    config = _load_config(args)
    order = args.order or config.checks.series_order or 6
    grid_field = solve(config)
    expansion, comparison = series_check(config, grid_field, order)
    os.makedirs(config.output_dir, exist_ok=True)
    write_json(
        os.path.join(config.output_dir, TAYLOR_FILE),
        {"expansion": expansion.to_dict(), "comparison": comparison},
    )
    _print_json(comparison)
    return ExitCode.OK


def _convergence(args: argparse.Namespace) -> int:
    config = _load_config(args)
    if args.levels:
        levels = _ints(args.levels, "--levels")
    else:
        levels = config.checks.convergence_levels
    evolution_table, geometry_table = convergence_pass(config, levels)
    os.makedirs(config.output_dir, exist_ok=True)
    for filename, table in (
        (CONVERGENCE_FILE, evolution_table),
        (GEOMETRY_CONVERGENCE_FILE, geometry_table),
    ):
        table.to_csv(
            os.path.join(config.output_dir, filename),
            index=False,
            float_format=CSV_FLOAT_FORMAT,
        )
        print(table.to_string())
    return ExitCode.OK


def _add_config_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config", required=True, help="Path to a JSON run configuration."
    )
    parser.add_argument(
        "--output-dir",
        help="Overrides the output directory of the configuration.",
    )


def build_parser() -> argparse.ArgumentParser:
    """Creates the argument parser of ``srh``."""
    parser = argparse.ArgumentParser(
        prog="srh",
        description=(
            "Construct and verify Kähler metrics satisfying the special "
            "Ricci-Hessian equation."
        ),
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        type=str.upper,
        choices=LOG_LEVELS,
        help="Logging level (default: WARNING).",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser(
        "run", help="Solve, verify and write every artifact."
    )
    _add_config_arguments(run_parser)
    run_parser.set_defaults(handler=_run)

    profiles_parser = subparsers.add_parser(
        "profiles", help="Evaluate a coefficient profile."
    )
    profiles_parser.add_argument("--family", required=True)
    profiles_parser.add_argument(
        "--tau", type=float, nargs="+", required=True
    )
    profiles_parser.add_argument("--param", type=float, default=0.0)
    profiles_parser.add_argument("--theta", type=float, default=0.0)
    profiles_parser.add_argument("--kappa", type=float, default=0.0)
    profiles_parser.add_argument("--affine-c", type=float, default=1.0)
    profiles_parser.add_argument("--affine-p", type=float, default=0.0)
    profiles_parser.set_defaults(handler=_profiles)

    jets_parser = subparsers.add_parser(
        "jets", help="Solve for a first jet at a single point."
    )
    jets_parser.add_argument("--state", required=True, help="Q,S,B,G")
    jets_parser.add_argument("--alpha", type=float, required=True)
    jets_parser.add_argument("--alpha1", type=float, default=0.0)
    jets_parser.add_argument("--F", type=float, default=0.0)
    jets_parser.add_argument("--F1", type=float, default=0.0)
    jets_parser.add_argument("--q-partials", help="Q_tau,Q_lam")
    jets_parser.add_argument("--direction", help="tau_dot,lam_dot")
    jets_parser.add_argument("--rate", help="Q_dot,S_dot,B_dot,G_dot")
    jets_parser.set_defaults(handler=_jets)

    solve_parser = subparsers.add_parser(
        "solve", help="Generate initial data and evolve them."
    )
    _add_config_arguments(solve_parser)
    solve_parser.set_defaults(handler=_solve)

    verify_parser = subparsers.add_parser(
        "verify", help="Verify the geometry of a saved grid."
    )
    verify_parser.add_argument(
        "--input",
        required=True,
        help="Directory written by 'solve' or 'run'.",
    )
    verify_parser.add_argument("--resample-n", type=int, default=65)
    verify_parser.add_argument("--curvature-oracle", action="store_true")
    verify_parser.add_argument(
        "--closedness",
        type=float,
        default=GatesSection().closedness,
        help="Largest accepted loop residual.",
    )
    verify_parser.set_defaults(handler=_verify)

    series_parser = subparsers.add_parser(
        "series", help="Compare a Taylor expansion with the evolution."
    )
    _add_config_arguments(series_parser)
    series_parser.add_argument("--order", type=int)
    series_parser.set_defaults(handler=_series)

    convergence_parser = subparsers.add_parser(
        "convergence", help="Run the refinement studies."
    )
    _add_config_arguments(convergence_parser)
    convergence_parser.add_argument(
        "--levels", help="Comma-separated numbers of λ points, e.g. 65,129."
    )
    convergence_parser.set_defaults(handler=_convergence)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of ``srh``.

    Returns:
        The exit code (see :class:`ExitCode`).
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.captureWarnings(True)
    try:
        return int(args.handler(args))
    except ConfigError as e:
        print(f"srh: {e}", file=sys.stderr)
        print(schema_text(RUN_CONFIG_SCHEMA), file=sys.stderr)
        return ExitCode.CONFIG
    except RicciHessianLibError as e:
        print(f"srh: {type(e).__name__}: {e}", file=sys.stderr)
        return exit_code_for(e)
    except Exception:  # pylint: disable=broad-except
        logger.exception("Unexpected error.")
        return ExitCode.LIBRARY_ERROR
