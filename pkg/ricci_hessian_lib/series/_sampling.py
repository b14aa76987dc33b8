"""Sampling of Taylor expansions on grids."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from ricci_hessian_lib.exceptions import ValidationError
from ricci_hessian_lib.evolution import (
    GridField,
    Slice,
    constraint_norms,
)
from ricci_hessian_lib._state_z import StateZ
from ricci_hessian_lib.series._taylor_z import TaylorZ


def sample_grid(
    t: TaylorZ, tau_grid: ArrayLike, lambda_grid: ArrayLike
) -> GridField:
    """Evaluates an expansion on a rectangular grid.

    The result can be compared directly with the output of
    :func:`~ricci_hessian_lib.evolution.evolve`. Constraint norms and
    slice diagnostics are measured with the same finite-difference
    stencils, over the whole slice.

    Args:
        t:
            The expansion. It must carry its profile.
        tau_grid:
            Uniform τ-grid.
        lambda_grid:
            Uniform λ-grid with at least five points.

    Returns:
        A :class:`~ricci_hessian_lib.evolution.GridField` without edge
        bands.

    Raises:
        ValidationError: If the expansion has no profile.
        RadiusError: If a grid point lies outside the trust radius.
    """
    if t.profile is None:
        raise ValidationError("Sampling needs an expansion with a profile.")
    taus = np.atleast_1d(np.asarray(tau_grid, dtype=float))
    lams = np.asarray(lambda_grid, dtype=float)
    tau_mesh, lam_mesh = np.meshgrid(taus, lams, indexing="ij")
    state = t.evaluate(tau_mesh, lam_mesh)
    q, s, b, g = (np.asarray(v, dtype=float) for v in state.fields())

    history = []
    diagnostics = []
    for i, tau in enumerate(taus):
        slice_ = Slice(
            float(tau), lams, StateZ(q[i], s[i], b[i], g[i]), t.profile
        )
        history.append(constraint_norms(slice_, edge_columns=0))
        diagnostics.append(slice_.diagnostics())
    return GridField(
        tau_grid=taus,
        lambda_grid=lams,
        q=q,
        s=s,
        b=b,
        g=g,
        profile=t.profile,
        constraint_history=np.asarray(history).reshape(-1, 2),
        diagnostics=diagnostics,
        edge_bands=[0] * taus.size,
    )
