import numpy as np
import pytest
from matplotlib.path import Path

from ricci_hessian_lib.exceptions import ConfigError, ResampleError
from ricci_hessian_lib.geometry import (
    largest_centered_rectangle,
    reconstruct_coords,
    resample_chart,
)


@pytest.fixture
def flat_resampled(flat_field):
    return resample_chart(reconstruct_coords(flat_field), n=9)


def test_flat_resampling(flat_resampled):
    x0, x1, u0, u1 = flat_resampled.rectangle
    assert 0.0 < x0 < 0.05 and 0.95 < x1 < 1.0
    assert 0.0 < u0 < 0.05 and 0.95 < u1 < 1.0
    assert flat_resampled.x.shape == (9,)
    x, u = np.meshgrid(flat_resampled.x, flat_resampled.u, indexing="ij")
    np.testing.assert_allclose(flat_resampled.tau, x, atol=1e-9)
    np.testing.assert_allclose(flat_resampled.lam, u, atol=1e-9)
    np.testing.assert_allclose(flat_resampled.pi, 1.0, atol=1e-12)
    assert flat_resampled.inversion_residual < 1e-10


def test_flat_potential_residuals(flat_resampled):
    residuals = flat_resampled.potential_residuals()
    assert set(residuals) == {
        "phi_x",
        "phi_u",
        "phi_xx",
        "phi_xu",
        "phi_uu",
        "mixed",
    }
    assert max(residuals.values()) < 1e-8


def test_interior_drops_guard_cells(flat_resampled):
    assert flat_resampled.guard == 2
    assert flat_resampled.interior(flat_resampled.q).shape == (5, 5)


def test_resampled_frames(flat_resampled):
    frames = flat_resampled.to_frames()
    assert set(frames) == {"tau", "lambda", "Q", "S", "B", "G", "Pi", "phi"}
    assert list(frames["Q"].columns) == ["x", "u", "value"]


def test_stretched_resampling(stretched_field):
    resampled = resample_chart(reconstruct_coords(stretched_field), n=17)
    x0, x1, u0, u1 = resampled.rectangle
    assert x1 - x0 == pytest.approx(0.25 * (u1 - u0))
    assert resampled.hu == pytest.approx(4.0 * resampled.hx)
    assert resampled.spacing == resampled.hu
    np.testing.assert_allclose(resampled.q, 2.0, atol=1e-12)


def test_resample_too_small(flat_field):
    with pytest.raises(ConfigError):
        resample_chart(reconstruct_coords(flat_field), n=8)
    with pytest.raises(ConfigError):
        resample_chart(reconstruct_coords(flat_field), n=9, margin=-1)


def test_rectangle_in_square():
    square = Path(
        [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0), (0.0, 0.0)],
        closed=True,
    )
    x0, x1, u0, u1 = largest_centered_rectangle(square, (1.0, 1.0))
    assert x0 + x1 == pytest.approx(2.0)
    assert 0.9 < x1 - x0 < 2.0
    assert u1 - u0 == pytest.approx(x1 - x0)


def test_rectangle_center_outside():
    square = Path(
        [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)],
        closed=True,
    )
    with pytest.raises(ResampleError):
        largest_centered_rectangle(square, (2.0, 2.0))
