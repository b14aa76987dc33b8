"""Value types of the jet algebra."""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Any

import numpy as np
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import Real, stack_broadcast


@dataclass(slots=True, frozen=True)
class Jet1:
    """The eight first partial derivatives of ``(Q, S, B, G)``.

    The τ-block comes first and the λ-block second, which is also the order
    used by :meth:`to_array` and :meth:`from_array`. Jets can be added,
    subtracted and multiplied by scalars, which is all that is needed to
    work with the affine space of solutions of the reduced system.
    """

    Q_tau: Real
    S_tau: Real
    B_tau: Real
    G_tau: Real
    Q_lam: Real
    S_lam: Real
    B_lam: Real
    G_lam: Real

    def values(self) -> tuple[Real, ...]:
        """Returns the eight partials in order."""
        return tuple(getattr(self, f.name) for f in fields(self))

    def to_array(self) -> NDArray[np.float64]:
        """Returns an array whose leading axis has length 8."""
        return stack_broadcast(*self.values())

    @classmethod
    def from_array(cls, values: Any) -> Jet1:
        """Creates a jet from an array whose leading axis has length 8."""
        array = np.asarray(values, dtype=float)
        if array.shape[0] != 8:
            raise ValueError(
                f"Expected a leading axis of length 8, got {array.shape}."
            )
        if array.ndim == 1:
            return cls(*(float(v) for v in array))
        return cls(*array)

    @classmethod
    def zero(cls) -> Jet1:
        """The zero jet."""
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    def tau_block(self) -> RateZ:
        """The τ-partials as a rate."""
        return RateZ(self.Q_tau, self.S_tau, self.B_tau, self.G_tau)

    def lam_block(self) -> RateZ:
        """The λ-partials as a rate."""
        return RateZ(self.Q_lam, self.S_lam, self.B_lam, self.G_lam)

    def __add__(self, other: Jet1) -> Jet1:
        if not isinstance(other, Jet1):
            return NotImplemented
        return Jet1(*(a + b for a, b in zip(self.values(), other.values())))

    def __sub__(self, other: Jet1) -> Jet1:
        if not isinstance(other, Jet1):
            return NotImplemented
        return Jet1(*(a - b for a, b in zip(self.values(), other.values())))

    def __mul__(self, factor: Real) -> Jet1:
        return Jet1(*(factor * a for a in self.values()))

    def __rmul__(self, factor: Real) -> Jet1:
        return self.__mul__(factor)

    def __neg__(self) -> Jet1:
        return Jet1(*(-a for a in self.values()))


@dataclass(slots=True, frozen=True)
class Direction:
    """A direction ``(τ̇, λ̇)`` in the ``(τ, λ)`` plane.

    Used as a horizontal direction it must be nonzero.
    """

    tau_dot: Real
    lam_dot: Real

    def is_zero(self) -> bool:
        """Whether the direction vanishes at some point."""
        return bool(
            np.any(
                (np.asarray(self.tau_dot) == 0)
                & (np.asarray(self.lam_dot) == 0)
            )
        )


@dataclass(slots=True, frozen=True)
class RateZ:
    """Rates of change ``(Q̇, Ṡ, Ḃ, Ġ)`` along a direction."""

    Q_dot: Real
    S_dot: Real
    B_dot: Real
    G_dot: Real

    def values(self) -> tuple[Real, Real, Real, Real]:
        """Returns ``(Q̇, Ṡ, Ḃ, Ġ)``."""
        return self.Q_dot, self.S_dot, self.B_dot, self.G_dot

    def to_array(self) -> NDArray[np.float64]:
        """Returns an array whose leading axis has length 4."""
        return stack_broadcast(*self.values())

    @classmethod
    def from_array(cls, values: Any) -> RateZ:
        """Creates a rate from an array whose leading axis has length 4."""
        array = np.asarray(values, dtype=float)
        if array.shape[0] != 4:
            raise ValueError(
                f"Expected a leading axis of length 4, got {array.shape}."
            )
        if array.ndim == 1:
            return cls(*(float(v) for v in array))
        return cls(*array)
