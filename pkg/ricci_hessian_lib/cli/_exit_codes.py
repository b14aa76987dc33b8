"""Process exit codes of the ``srh`` command."""

from __future__ import annotations

from enum import IntEnum

from ricci_hessian_lib.exceptions import (
    AdmissibilityError,
    BlowupError,
    ConfigError,
    DegenerateStudyError,
    DirectionError,
    DomainError,
    MembershipError,
    OrderError,
    RadiusError,
    ResampleError,
    SingularError,
    ValidationError,
)


class ExitCode(IntEnum):
    """Exit codes, one per failure class."""

    OK = 0
    LIBRARY_ERROR = 1
    CONFIG = 2
    DOMAIN = 3
    ADMISSIBILITY = 4
    BLOWUP = 5
    RESAMPLE = 6
    CLOSEDNESS = 7
    SERIES = 8
    JET_ALGEBRA = 9
    DEGENERATE_STUDY = 10


_ERROR_CODES: list[tuple[type[Exception], ExitCode]] = [
    (ConfigError, ExitCode.CONFIG),
    (DomainError, ExitCode.DOMAIN),
    (AdmissibilityError, ExitCode.ADMISSIBILITY),
    (BlowupError, ExitCode.BLOWUP),
    (ResampleError, ExitCode.RESAMPLE),
    (OrderError, ExitCode.SERIES),
    (RadiusError, ExitCode.SERIES),
    (DirectionError, ExitCode.JET_ALGEBRA),
    (MembershipError, ExitCode.JET_ALGEBRA),
    (SingularError, ExitCode.JET_ALGEBRA),
    (DegenerateStudyError, ExitCode.DEGENERATE_STUDY),
    (ValidationError, ExitCode.CONFIG),
]

_TRUNCATION_CODES = {
    "BlowupError": ExitCode.BLOWUP,
    "PositivityError": ExitCode.ADMISSIBILITY,
}


def exit_code_for(error: BaseException) -> ExitCode:
    """Maps an exception to its exit code.

    Anything not raised by the library maps to ``LIBRARY_ERROR``.
    """
    for error_type, code in _ERROR_CODES:
        if isinstance(error, error_type):
            return code
    return ExitCode.LIBRARY_ERROR


def exit_code_for_truncation(reason: str | None) -> ExitCode:
    """Maps the truncation reason of an evolution to its exit code."""
    if reason is None:
        return ExitCode.LIBRARY_ERROR
    name = reason.split(":", 1)[0].strip()
    return _TRUNCATION_CODES.get(name, ExitCode.LIBRARY_ERROR)
