"""Enumerations of coefficient families."""

from enum import Enum


class ProfileFamily(str, Enum):
    """Families of admissible coefficient functions ``α``.

    The first five are the canonical families (before any affine
    modification); the last two are the one-parameter continuation families
    that interpolate between them.
    """

    CONST2 = "const2"
    RECIPROCAL = "reciprocal"
    TANH = "tanh"
    COTH = "coth"
    COT = "cot"
    EPS = "eps"
    T = "t"

    @property
    def is_continuation(self) -> bool:
        """Whether the family is one of the continuation families."""
        return self in (ProfileFamily.EPS, ProfileFamily.T)


class ContinuationKind(str, Enum):
    """Kinds of continuation families.

    ``EPS_FAMILY`` is parametrized by the constant ``ε`` and ``T_FAMILY`` by
    the real number ``t``.
    """

    EPS_FAMILY = "eps"
    T_FAMILY = "t"
