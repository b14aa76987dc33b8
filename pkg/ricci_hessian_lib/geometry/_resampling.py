"""Resampling of charts on uniform ``(x, u)`` grids."""

from __future__ import annotations

import logging
import warnings

import numpy as np
from matplotlib.path import Path
from numpy.typing import NDArray
from scipy.interpolate import RectBivariateSpline
from scipy.spatial import KDTree

from ricci_hessian_lib.exceptions import ConfigError, ResampleError
from ricci_hessian_lib.geometry._chart import ChartData
from ricci_hessian_lib.geometry._resampled_chart import ResampledChart


logger = logging.getLogger(__name__)

NEWTON_TOLERANCE = 1e-10
MAX_NEWTON_STEPS = 50
POLISH_STEPS = 2
BISECTION_STEPS = 40
BOUNDARY_SAMPLES = 257
RECTANGLE_SHRINK = 0.98
CLOSEDNESS_WARNING = 1e-6

Rectangle = tuple[float, float, float, float]


def _ring(values: NDArray[np.float64]) -> NDArray[np.float64]:
    """Boundary values of a 2-D array, counter-clockwise from ``[0, 0]``."""
    return np.concatenate(
        [
            values[0, :],
            values[1:, -1],
            values[-1, -2::-1],
            values[-2:0:-1, 0],
        ]
    )


def _degree(size: int) -> int:
    return 5 if size >= 6 else 3


class _ChartSplines:
    """Splines of the chart's fields over the ``(τ, λ)`` grid.

    The splines are quintic along each axis with at least six nodes and
    cubic otherwise.
    """

    def __init__(self, chart: ChartData):
        field = chart.field
        band = max(field.edge_bands, default=0)
        columns = slice(band, field.n_lam - band)
        tau = field.tau_grid
        order = slice(None, None, -1) if tau[-1] < tau[0] else slice(None)
        self.tau = tau[order]
        self.lam = field.lambda_grid[columns]
        if self.lam.size < 4 or self.tau.size < 4:
            raise ResampleError(
                "At least 4x4 grid points outside the edge bands are needed "
                "for spline resampling."
            )
        self.nodes = {
            "x": chart.x[order, columns],
            "u": chart.u[order, columns],
            "phi": chart.phi[order, columns],
            "q": field.q[order, columns],
            "s": field.s[order, columns],
            "b": field.b[order, columns],
            "g": field.g[order, columns],
        }
        self.splines = {
            name: RectBivariateSpline(
                self.tau,
                self.lam,
                values,
                kx=_degree(self.tau.size),
                ky=_degree(self.lam.size),
            )
            for name, values in self.nodes.items()
        }

    def ev(
        self,
        name: str,
        tau: NDArray[np.float64],
        lam: NDArray[np.float64],
        dx: int = 0,
        dy: int = 0,
    ) -> NDArray[np.float64]:
        return self.splines[name].ev(tau, lam, dx=dx, dy=dy)

    def boundary(self) -> Path:
        """The image of the boundary of the grid as a closed polygon."""
        x, u = self.nodes["x"], self.nodes["u"]
        xs = _ring(x)
        us = _ring(u)
        vertices = np.column_stack([xs, us])
        vertices = np.vstack([vertices, vertices[:1]])
        return Path(vertices, closed=True)


def _rectangle_points(rectangle: Rectangle) -> NDArray[np.float64]:
    x0, x1, u0, u1 = rectangle
    t = np.linspace(0.0, 1.0, BOUNDARY_SAMPLES)
    xs = x0 + (x1 - x0) * t
    us = u0 + (u1 - u0) * t
    return np.concatenate(
        [
            np.column_stack([xs, np.full_like(xs, u0)]),
            np.column_stack([xs, np.full_like(xs, u1)]),
            np.column_stack([np.full_like(us, x0), us]),
            np.column_stack([np.full_like(us, x1), us]),
        ]
    )


def largest_centered_rectangle(
    boundary: Path, center: tuple[float, float]
) -> Rectangle:
    """Largest axis-aligned rectangle centred at ``center`` inside
    ``boundary``, with the aspect ratio of the polygon's bounding box.

    Raises:
        ResampleError: If the center is not inside the polygon.
    """
    cx, cu = center
    if not boundary.contains_point((cx, cu)):
        raise ResampleError(
            f"The center ({cx:.6g}, {cu:.6g}) of the chart is outside the "
            "image of the grid."
        )
    vertices = boundary.vertices
    half_x = min(cx - vertices[:, 0].min(), vertices[:, 0].max() - cx)
    half_u = min(cu - vertices[:, 1].min(), vertices[:, 1].max() - cu)

    def rectangle(scale: float) -> Rectangle:
        return (
            cx - scale * half_x,
            cx + scale * half_x,
            cu - scale * half_u,
            cu + scale * half_u,
        )

    def fits(scale: float) -> bool:
        points = _rectangle_points(rectangle(scale))
        return bool(np.all(boundary.contains_points(points)))

    low, high = 0.0, 1.0
    if fits(high):
        low = high
    else:
        for _ in range(BISECTION_STEPS):
            middle = 0.5 * (low + high)
            if fits(middle):
                low = middle
            else:
                high = middle
    return rectangle(low * RECTANGLE_SHRINK)


def _check_rectangle(boundary: Path, rectangle: Rectangle) -> Rectangle:
    x0, x1, u0, u1 = (float(v) for v in rectangle)
    inside = x1 > x0 and u1 > u0
    if inside:
        points = _rectangle_points((x0, x1, u0, u1))
        inside = bool(np.all(boundary.contains_points(points)))
    if not inside:
        raise ResampleError(
            "The requested rectangle is not inside the image of the grid.",
            rectangle=rectangle,
        )
    return x0, x1, u0, u1


def _invert(
    splines: _ChartSplines,
    x_targets: NDArray[np.float64],
    u_targets: NDArray[np.float64],
    rectangle: Rectangle,
) -> tuple[NDArray[np.float64], NDArray[np.float64], float]:
    nodes_x, nodes_u = splines.nodes["x"], splines.nodes["u"]
    tree = KDTree(np.column_stack([nodes_x.ravel(), nodes_u.ravel()]))
    _, index = tree.query(np.column_stack([x_targets, u_targets]))
    i, j = np.unravel_index(index, nodes_x.shape)
    tau, lam = splines.tau[i].astype(float), splines.lam[j].astype(float)
    tau_range = (splines.tau[0], splines.tau[-1])
    lam_range = (splines.lam[0], splines.lam[-1])
    extent = max(rectangle[1] - rectangle[0], rectangle[3] - rectangle[2])
    tolerance = NEWTON_TOLERANCE * max(1.0, extent)

    error = np.inf
    converged: tuple[NDArray[np.float64], NDArray[np.float64], float] | None
    converged = None
    polish = 0
    for step in range(MAX_NEWTON_STEPS + POLISH_STEPS):
        rx = splines.ev("x", tau, lam) - x_targets
        ru = splines.ev("u", tau, lam) - u_targets
        error = float(np.max(np.hypot(rx, ru)))
        if error <= tolerance:
            converged = (tau, lam, error)
            if polish == POLISH_STEPS:
                break
            polish += 1
        elif converged is not None:
            break
        j11 = splines.ev("x", tau, lam, dx=1)
        j12 = splines.ev("x", tau, lam, dy=1)
        j21 = splines.ev("u", tau, lam, dx=1)
        j22 = splines.ev("u", tau, lam, dy=1)
        det = j11 * j22 - j12 * j21
        with np.errstate(divide="ignore", invalid="ignore"):
            d_tau = (j22 * rx - j12 * ru) / det
            d_lam = (j11 * ru - j21 * rx) / det
        if not np.all(np.isfinite(d_tau) & np.isfinite(d_lam)):
            break
        tau = np.clip(tau - d_tau, *tau_range)
        lam = np.clip(lam - d_lam, *lam_range)
    if converged is not None:
        logger.debug("Chart inversion converged in %d steps.", step)
        return converged
    raise ResampleError(
        f"Chart inversion did not reach {tolerance:.1e} (residual "
        f"{error:.3g}).",
        rectangle=rectangle,
    )


def resample_chart(
    chart: ChartData,
    n: int = 65,
    margin: int = 2,
    rectangle: Rectangle | None = None,
) -> ResampledChart:
    """Samples a chart on a uniform ``n × n`` grid of ``(x, u)``.

    The fields are interpolated by quintic splines over the ``(τ, λ)``
    grid (outside the edge bands of the evolution). Unless ``rectangle``
    is given, the target grid fills the largest centred axis-aligned
    rectangle inside the image of the grid. Each target point is mapped
    back to ``(τ, λ)`` by Newton's method with spline Jacobians, seeded
    from the nearest grid node and polished by two extra steps once the
    tolerance is met.

    Args:
        chart:
            The reconstructed chart.
        n:
            Number of points per axis, guard cells included.
        margin:
            Number of guard cells on each side.
        rectangle:
            Target rectangle ``(x0, x1, u0, u1)``. It must lie inside the
            image of the grid. Sharing one rectangle between refinements
            makes their spacings exactly proportional.

    Returns:
        The :class:`ResampledChart`.

    Raises:
        ConfigError: If ``n`` is too small for the guard cells.
        ResampleError: If no rectangle fits in the image, the given one
            does not, or the inversion fails to reach ``1e-10``.
    """
    if margin < 0 or n < 2 * margin + 5:
        raise ConfigError(
            f"A resampled grid with {margin} guard cells needs at least "
            f"{2 * margin + 5} points per axis, got {n}."
        )
    if chart.closedness > CLOSEDNESS_WARNING:
        warnings.warn(
            f"Resampling a chart whose loop residual is "
            f"{chart.closedness:.3g}.",
            stacklevel=2,
        )
    splines = _ChartSplines(chart)
    tau_mid = 0.5 * (splines.tau[0] + splines.tau[-1])
    lam_mid = 0.5 * (splines.lam[0] + splines.lam[-1])
    center = (
        float(splines.ev("x", tau_mid, lam_mid)),
        float(splines.ev("u", tau_mid, lam_mid)),
    )
    if rectangle is None:
        rectangle = largest_centered_rectangle(splines.boundary(), center)
    else:
        rectangle = _check_rectangle(splines.boundary(), rectangle)
    x0, x1, u0, u1 = rectangle
    if not (x1 > x0 and u1 > u0):
        raise ResampleError(
            "The image of the grid cannot host a regular sub-grid.",
            rectangle=rectangle,
        )
    x = np.linspace(x0, x1, n)
    u = np.linspace(u0, u1, n)
    x_mesh, u_mesh = np.meshgrid(x, u, indexing="ij")
    tau, lam, residual = _invert(
        splines, x_mesh.ravel(), u_mesh.ravel(), rectangle
    )
    shape = x_mesh.shape
    values = {
        name: splines.ev(name, tau, lam).reshape(shape)
        for name in ("q", "s", "b", "g", "phi")
    }
    logger.info(
        "Resampled chart on [%.6g, %.6g] x [%.6g, %.6g] with %d points per "
        "axis.",
        x0,
        x1,
        u0,
        u1,
        n,
    )
    return ResampledChart(
        x=x,
        u=u,
        tau=tau.reshape(shape),
        lam=lam.reshape(shape),
        q=values["q"],
        s=values["s"],
        b=values["b"],
        g=values["g"],
        phi=values["phi"],
        rectangle=rectangle,
        guard=margin,
        inversion_residual=residual,
    )
