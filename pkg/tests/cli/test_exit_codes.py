import pytest

from ricci_hessian_lib.exceptions import (
    BlowupError,
    ConfigError,
    DegeneracyError,
    DegenerateStudyError,
    DirectionError,
    DomainError,
    MembershipError,
    OrderError,
    PositivityError,
    RadiusError,
    ResampleError,
    SingularError,
    ValidationError,
)
from ricci_hessian_lib.cli import (
    ExitCode,
    exit_code_for,
    exit_code_for_truncation,
)


@pytest.mark.parametrize(
    "error, code",
    [
        (ConfigError("bad"), ExitCode.CONFIG),
        (ValidationError("bad"), ExitCode.CONFIG),
        (DomainError("pole"), ExitCode.DOMAIN),
        (
            PositivityError("negative", tau=0.1, lam=0.2),
            ExitCode.ADMISSIBILITY,
        ),
        (DegeneracyError("flat"), ExitCode.ADMISSIBILITY),
        (BlowupError("nan", tau=0.3), ExitCode.BLOWUP),
        (ResampleError("no room"), ExitCode.RESAMPLE),
        (OrderError("too high"), ExitCode.SERIES),
        (RadiusError("too far"), ExitCode.SERIES),
        (DirectionError("zero"), ExitCode.JET_ALGEBRA),
        (MembershipError("outside"), ExitCode.JET_ALGEBRA),
        (SingularError("singular"), ExitCode.JET_ALGEBRA),
        (DegenerateStudyError("one level"), ExitCode.DEGENERATE_STUDY),
        (ValueError("other"), ExitCode.LIBRARY_ERROR),
    ],
)
def test_exit_code_for(error, code):
    assert exit_code_for(error) == code


@pytest.mark.parametrize(
    "reason, code",
    [
        ("PositivityError: Π = -1 ≤ 0", ExitCode.ADMISSIBILITY),
        ("BlowupError: non-finite values", ExitCode.BLOWUP),
        ("SomethingElse: ?", ExitCode.LIBRARY_ERROR),
        (None, ExitCode.LIBRARY_ERROR),
    ],
)
def test_exit_code_for_truncation(reason, code):
    assert exit_code_for_truncation(reason) == code


def test_codes_are_distinct():
    values = [code.value for code in ExitCode]
    assert len(values) == len(set(values))
    assert ExitCode.OK == 0
