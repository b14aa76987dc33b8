"""Exceptions for the Ricci-Hessian library."""

from __future__ import annotations

from typing import Any


class RicciHessianLibError(Exception):
    """Base class for exceptions in the Ricci-Hessian library.

    This class is the base class for all exceptions raised by the library.

    It is useful for catching any exception that is raised by the
    library, without having to catch each specific exception
    separately.
    """


class ValidationError(RicciHessianLibError):
    """Exception raised when a validation check fails.

    This exception is raised when a validation check fails, indicating
    that the input data is invalid or does not meet the requirements of
    the function or class that is performing the validation.

    It is useful to distinguish this exception from other exceptions
    that may be raised by a function or class, such as a ValueError or
    a TypeError, which may indicate a bug in the code or an invalid
    input, rather than a validation failure.
    """


class ConfigError(ValidationError):
    """Exception raised when a configuration object is invalid.

    Examples are a vanishing affine scale, an expression string outside the
    supported grammar, a non-uniform grid or a run configuration that does
    not match its JSON schema.
    """


class DomainError(RicciHessianLibError):
    """Exception raised when a profile is evaluated at or near a pole.

    Evaluations closer than the guard band to a pole of ``α`` are rejected
    instead of returning huge values. The same exception is raised when a
    requested ``τ``-range crosses a pole.
    """


class AdmissibilityError(RicciHessianLibError):
    """Exception raised when a state is not admissible.

    A state ``(Q, S, B, G)`` is admissible when ``Q > 0`` and
    ``Π = QB - S² > 0``. Operations that divide by ``Q`` require at least
    ``Q > 0``.
    """


class PositivityError(AdmissibilityError):
    """Exception raised when ``Q > 0`` or ``Π > 0`` fails on a grid.

    Attributes:
        tau:
            The ``τ`` value of the first offending point, if known.
        lam:
            The ``λ`` value of the first offending point, if known.

    Args:
        message:
            Human readable description.
        tau:
            The ``τ`` value of the first offending point.
        lam:
            The ``λ`` value of the first offending point.
    """

    def __init__(
        self,
        message: str,
        tau: float | None = None,
        lam: float | None = None,
    ):
        super().__init__(message)
        self.tau = tau
        self.lam = lam


class DegeneracyError(AdmissibilityError):
    """Exception raised when ``Q_λ`` vanishes on an initial slice.

    Nondegenerate solutions need ``dQ ∧ dτ ≠ 0``, which on a line of
    constant ``τ`` means ``Q_λ ≠ 0``.
    """


class DirectionError(RicciHessianLibError):
    """Exception raised when a horizontal direction is the zero vector."""


class MembershipError(RicciHessianLibError):
    """Exception raised when a rate vector does not belong to ``L``.

    The affine map from jets to rates is onto the subspace ``L`` cut out by
    two linear equations. Rates outside ``L`` have no preimage, so
    membership is checked before inverting.
    """


class SingularError(RicciHessianLibError):
    """Exception raised when the 2x2 system inverting a jet is singular.

    For admissible states and nonzero directions the determinant is
    ``Ψ/Q > 0``, so this exception signals a bug or a state that is not
    admissible.
    """


class BlowupError(RicciHessianLibError):
    """Exception raised when the evolution produces NaN or Inf values.

    Attributes:
        tau:
            The ``τ`` value at which non-finite values were detected.

    Args:
        message:
            Human readable description.
        tau:
            The ``τ`` value at which non-finite values were detected.
    """

    def __init__(self, message: str, tau: float | None = None):
        super().__init__(message)
        self.tau = tau


class DegenerateStudyError(RicciHessianLibError):
    """Exception raised when a convergence study cannot measure orders.

    This happens when the same resolution is requested twice or when fewer
    than two levels are given.
    """


class OrderError(RicciHessianLibError):
    """Exception raised when a series order is outside the supported range.
    """


class RadiusError(RicciHessianLibError):
    """Exception raised when a series is evaluated outside its trust radius.
    """


class ResampleError(RicciHessianLibError):
    """Exception raised when a chart cannot be resampled on a regular grid.

    Attributes:
        rectangle:
            The largest rectangle ``(x0, x1, u0, u1)`` that could be embedded
            in the image of the grid, or ``None`` if none was found.

    Args:
        message:
            Human readable description.
        rectangle:
            The achievable rectangle, if any.
    """

    def __init__(
        self,
        message: str,
        rectangle: tuple[float, float, float, float] | None = None,
    ):
        super().__init__(message)
        self.rectangle = rectangle

    def to_dict(self) -> dict[str, Any]:
        """Returns a JSON-friendly description of the failure."""
        return {
            "message": str(self),
            "rectangle": (
                list(self.rectangle) if self.rectangle is not None else None
            ),
        }
