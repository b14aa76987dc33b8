"""Home of the `ProfileParams` class."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from ricci_hessian_lib.exceptions import ConfigError
from ricci_hessian_lib.profiles._profile_family import ProfileFamily


_BASE_EPS = {
    ProfileFamily.CONST2: 1.0,
    ProfileFamily.RECIPROCAL: 0.0,
    ProfileFamily.TANH: 1.0,
    ProfileFamily.COTH: 1.0,
    ProfileFamily.COT: -1.0,
    ProfileFamily.T: 1.0,
}


@dataclass(slots=True, frozen=True)
class ProfileParams:
    """A coefficient family together with its constants.

    The profile evaluated at ``τ`` is the base family evaluated at
    ``t = affine_c * (τ - affine_p)`` and rescaled, so that
    ``α(τ) = affine_c * α_base(t)``. ``theta`` and ``kappa`` are the
    constants ``θ`` and ``κ`` of the current (modified) frame; they fix
    ``F`` through its closed forms.

    Attributes:
        family:
            The coefficient family. Strings are converted to
            :class:`ProfileFamily`.
        theta:
            The constant ``θ``.
        kappa:
            The constant ``κ``.
        param:
            Parameter of the continuation families: ``ε`` for
            ``ProfileFamily.EPS`` and ``t`` for ``ProfileFamily.T``. Ignored
            by the other families.
        affine_c:
            Scale of the affine modification. Must be nonzero.
        affine_p:
            Shift of the affine modification.
    """

    family: ProfileFamily
    theta: float = 0.0
    kappa: float = 0.0
    param: float = 0.0
    affine_c: float = 1.0
    affine_p: float = 0.0

    def __post_init__(self):
        if not isinstance(self.family, ProfileFamily):
            try:
                family = ProfileFamily(str(self.family).lower())
            except ValueError as e:
                raise ConfigError(
                    f"Profile family {self.family} not recognized. Available "
                    f"families: {', '.join(f.value for f in ProfileFamily)}."
                ) from e
            object.__setattr__(self, "family", family)
        for name in ("theta", "kappa", "param", "affine_c", "affine_p"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value}.")
            object.__setattr__(self, name, float(value))
        if self.affine_c == 0:
            raise ConfigError("The affine scale affine_c must be nonzero.")

    @property
    def base_eps(self) -> float:
        """The constant ``ε`` of the unmodified family."""
        if self.family is ProfileFamily.EPS:
            return self.param
        return _BASE_EPS[self.family]

    @property
    def eps(self) -> float:
        """The constant ``ε`` of the current frame, ``affine_c² * ε_base``."""
        return self.affine_c**2 * self.base_eps

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation of the profile.

        The returned dictionary has the structure
        ``{"family", "param", "theta", "kappa", "affine": {"c", "p"}}``.
        """
        return {
            "family": self.family.value,
            "param": self.param,
            "theta": self.theta,
            "kappa": self.kappa,
            "affine": {"c": self.affine_c, "p": self.affine_p},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ProfileParams:
        """Creates a profile from its JSON representation.

        ``param``, ``theta``, ``kappa`` and ``affine`` are optional.

        Raises:
            ConfigError: If a key is missing or has the wrong type.
        """
        try:
            affine = data.get("affine") or {}
            return cls(
                family=data["family"],
                theta=float(data.get("theta", 0.0)),
                kappa=float(data.get("kappa", 0.0)),
                param=float(data.get("param", 0.0) or 0.0),
                affine_c=float(affine.get("c", 1.0)),
                affine_p=float(affine.get("p", 0.0)),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ConfigError(f"Invalid profile configuration: {e}") from e
