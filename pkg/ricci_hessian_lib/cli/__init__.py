"""The ``srh`` command line tool: run configurations, the pipeline behind
``srh run`` and its exit codes.

.. autosummary::
    :nosignatures:

    main
    RunConfig
    GridSection
    SeedSection
    ChecksSection
    GatesSection
    run
    RunResult
    ExitCode
    exit_code_for

Run configurations are JSON documents validated against
``schemas/run_config.schema.json``; the ``report.json`` written by a run is
validated against ``schemas/report.schema.json``.
"""

from ._schemas import (
    load_schema,
    schema_text,
    validate_run_config,
    validate_report,
    RUN_CONFIG_SCHEMA,
    REPORT_SCHEMA,
)
from ._run_config import (
    RunConfig,
    GridSection,
    SeedSection,
    ChecksSection,
    GatesSection,
    SCHEMA_VERSION,
    MIN_LAMBDA_POINTS,
)
from ._exit_codes import ExitCode, exit_code_for, exit_code_for_truncation
from ._pipeline import (
    RunResult,
    run,
    solve,
    series_check,
    verify_field,
    evaluate_gates,
    build_report,
    convergence_pass,
    package_versions,
)
from ._main import main, build_parser


__all__ = [
    "load_schema",
    "schema_text",
    "validate_run_config",
    "validate_report",
    "RUN_CONFIG_SCHEMA",
    "REPORT_SCHEMA",
    "RunConfig",
    "GridSection",
    "SeedSection",
    "ChecksSection",
    "GatesSection",
    "SCHEMA_VERSION",
    "MIN_LAMBDA_POINTS",
    "ExitCode",
    "exit_code_for",
    "exit_code_for_truncation",
    "RunResult",
    "run",
    "solve",
    "series_check",
    "verify_field",
    "evaluate_gates",
    "build_report",
    "convergence_pass",
    "package_versions",
    "main",
    "build_parser",
]
