"""Home of the `StateZ` class."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

import numpy as np
from numpy.typing import NDArray


Real = Union[float, NDArray[np.float64]]


def stack_broadcast(*values: Real) -> NDArray[np.float64]:
    """Broadcasts the values against each other and stacks them along a new
    leading axis."""
    return np.stack(
        np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in values))
    )


@dataclass(slots=True, frozen=True)
class StateZ:
    """The pointwise unknown ``Z = (Q, S, B, G)``.

    ``Q``, ``S`` and ``B`` are the second derivatives ``φ_xx``, ``φ_xu`` and
    ``φ_uu`` of the Kähler potential expressed as functions of
    ``(τ, λ) = (φ_x, φ_u)``, and ``G`` is the auxiliary unknown that turns
    the reduced system into a first-order one.

    Fields can be floats or arrays of a common shape, in which case every
    operation of the library acts pointwise.

    Attributes:
        Q:
            ``g(∇τ, ∇τ)``; positive for admissible states.
        S:
            Mixed component of the metric in the ``(x, u)`` chart.
        B:
            ``u``-component of the metric in the ``(x, u)`` chart.
        G:
            Auxiliary unknown of the first-order system.
    """

    Q: Real
    S: Real
    B: Real
    G: Real = 0.0

    @property
    def pi(self) -> Real:
        """The volume factor ``Π = QB - S²``."""
        return self.Q * self.B - self.S * self.S

    def is_admissible(self) -> bool:
        """Returns whether ``Q > 0`` and ``Π > 0`` hold everywhere."""
        return bool(np.all(self.Q > 0) and np.all(self.pi > 0))

    def as_array(self) -> NDArray[np.float64]:
        """Stacks the four fields along a new leading axis."""
        return stack_broadcast(*self.fields())

    def fields(self) -> tuple[Real, Real, Real, Real]:
        """Returns ``(Q, S, B, G)``."""
        return self.Q, self.S, self.B, self.G

    @classmethod
    def from_array(cls, values: Any) -> StateZ:
        """Creates a state from an array whose leading axis has length 4."""
        array = np.asarray(values, dtype=float)
        if array.shape[0] != 4:
            raise ValueError(
                f"Expected a leading axis of length 4, got {array.shape}."
            )
        return cls(array[0], array[1], array[2], array[3])

    def scale(self) -> float:
        """Returns ``max(|Q|, |S|, |B|, |G|)`` over all points."""
        return float(np.max(np.abs(self.as_array())))
