"""JSON schemas shipped with the package."""

from __future__ import annotations

import functools
import json
from importlib import resources
from typing import Any

import jsonschema

from ricci_hessian_lib.exceptions import ConfigError, ValidationError


RUN_CONFIG_SCHEMA = "run_config.schema.json"
REPORT_SCHEMA = "report.schema.json"


@functools.cache
def load_schema(name: str) -> dict[str, Any]:
    """Loads a schema from ``ricci_hessian_lib/cli/schemas``.

    Results are cached, so every schema is read once.
    """
    path = resources.files("ricci_hessian_lib.cli") / "schemas" / name
    with path.open(encoding="utf-8") as f:
        return json.load(f)


def schema_text(name: str) -> str:
    """The schema formatted for printing."""
    return json.dumps(load_schema(name), indent=2)


def validate_run_config(data: dict[str, Any]) -> None:
    """Validates a run configuration.

    Raises:
        ConfigError: If ``data`` does not match the schema.
    """
    try:
        jsonschema.validate(
            instance=data, schema=load_schema(RUN_CONFIG_SCHEMA)
        )
    except jsonschema.ValidationError as e:
        location = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ConfigError(
            f"Invalid run configuration at {location}: {e.message}"
        ) from e


def validate_report(data: dict[str, Any]) -> None:
    """Validates a ``report.json`` document.

    Raises:
        ValidationError: If ``data`` does not match the schema.
    """
    try:
        jsonschema.validate(
            instance=data, schema=load_schema(REPORT_SCHEMA)
        )
    except jsonschema.ValidationError as e:
        raise ValidationError(f"Invalid report: {e.message}") from e
