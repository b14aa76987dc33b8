"""Local construction and verification of four-dimensional Kähler metrics
satisfying the special Ricci-Hessian equation ``α∇dτ + r = σg``.

.. autosummary::
    :nosignatures:

    StateZ

Subpackages:

* :mod:`ricci_hessian_lib.profiles`: coefficient profiles ``α`` and ``F``.
* :mod:`ricci_hessian_lib.jet_algebra`: pointwise linear algebra of the
  reduced first-order system.
* :mod:`ricci_hessian_lib.evolution`: initial data and τ-evolution on grids.
* :mod:`ricci_hessian_lib.series`: bivariate Taylor expansions.
* :mod:`ricci_hessian_lib.geometry`: reconstruction of the metric and
  verification of the equation.
* :mod:`ricci_hessian_lib.cli`: the ``srh`` command line tool.
"""

from ricci_hessian_lib._state_z import StateZ, Real


__version__ = "0.1.0"

__all__ = [
    "StateZ",
    "Real",
]
