"""Initial data on a line ``τ = τ₀`` and its evolution in ``τ``.

.. autosummary::
    :nosignatures:

    SeedFunction
    parse_expression
    Slice
    SliceDiagnostics
    GridField
    generate_initial_data
    EvolutionConfig
    OnFailure
    evolve
    constraint_residuals
    constraint_norms
    system_residuals
    ConvergenceConfig
    convergence_study

The reduced system consists of four evolution equations and two
constraints. Initial data solve the constraints along the λ-direction,
the evolution equations are integrated in ``τ`` by the method of lines and
the constraints are monitored on every slice.
"""

from ._seed_function import (
    SeedFunction,
    parse_expression,
    DEFAULT_Q_EXPRESSION,
    DEFAULT_S_EXPRESSION,
)
from ._slice import Slice, SliceDiagnostics, check_lambda_grid
from ._grid_field import (
    GridField,
    field_frame,
    CSV_FLOAT_FORMAT,
)
from ._initial_data import generate_initial_data
from ._evolve import (
    EvolutionConfig,
    OnFailure,
    evolve,
    constraint_residuals,
    constraint_norms,
    system_residuals,
    banded_max,
)
from ._convergence import ConvergenceConfig, convergence_study


__all__ = [
    "SeedFunction",
    "parse_expression",
    "DEFAULT_Q_EXPRESSION",
    "DEFAULT_S_EXPRESSION",
    "Slice",
    "SliceDiagnostics",
    "check_lambda_grid",
    "GridField",
    "field_frame",
    "CSV_FLOAT_FORMAT",
    "generate_initial_data",
    "EvolutionConfig",
    "OnFailure",
    "evolve",
    "constraint_residuals",
    "constraint_norms",
    "system_residuals",
    "banded_max",
    "ConvergenceConfig",
    "convergence_study",
]
