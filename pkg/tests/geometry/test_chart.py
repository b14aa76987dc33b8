import numpy as np
import pytest

from ricci_hessian_lib import StateZ
from ricci_hessian_lib.exceptions import PositivityError, ValidationError
from ricci_hessian_lib.geometry import (
    cell_circulations,
    coordinate_forms,
    reconstruct_coords,
    reconstruct_potential,
)


def test_flat_coordinates(flat_field):
    chart = reconstruct_coords(flat_field)
    tau, lam = np.meshgrid(
        flat_field.tau_grid, flat_field.lambda_grid, indexing="ij"
    )
    np.testing.assert_allclose(chart.x, tau, atol=1e-14)
    np.testing.assert_allclose(chart.u, lam, atol=1e-14)
    np.testing.assert_allclose(
        chart.phi, (tau**2 + lam**2) / 2.0, atol=1e-14
    )
    assert chart.closedness < 1e-12
    assert chart.resampled is None


def test_stretched_coordinates(stretched_field):
    chart = reconstruct_coords(stretched_field)
    tau, lam = np.meshgrid(
        stretched_field.tau_grid, stretched_field.lambda_grid, indexing="ij"
    )
    np.testing.assert_allclose(chart.x, tau / 2.0, atol=1e-14)
    np.testing.assert_allclose(chart.u, 2.0 * lam, atol=1e-14)


def test_sheared_chart_is_closed(sheared_cigar_fields):
    chart = reconstruct_coords(sheared_cigar_fields[0])
    assert set(chart.loop_residuals) == {"x", "u", "phi"}
    assert chart.closedness < 1e-10
    np.testing.assert_allclose(
        reconstruct_potential(chart), chart.phi, atol=1e-14
    )


def test_sheared_u_coordinate(sheared_cigar_fields):
    field = sheared_cigar_fields[0]
    chart = reconstruct_coords(field)
    tau, lam = np.meshgrid(field.tau_grid, field.lambda_grid, indexing="ij")
    np.testing.assert_allclose(chart.u, 0.5 * tau + lam, atol=1e-12)


def test_circulation_of_exact_form():
    tau, lam = np.meshgrid(
        np.linspace(0.0, 1.0, 6), np.linspace(0.0, 1.0, 6), indexing="ij"
    )
    form = (lam, tau)
    circulation = cell_circulations(form, 0.2, 0.2)
    assert circulation.shape == (5, 5)
    np.testing.assert_allclose(circulation, 0.0, atol=1e-15)
    rotation = cell_circulations((-lam, tau), 0.2, 0.2)
    np.testing.assert_allclose(rotation, 2 * 0.04)


def test_coordinate_forms(stretched_field):
    forms = coordinate_forms(stretched_field)
    np.testing.assert_allclose(forms["x"][0], 0.5)
    np.testing.assert_allclose(forms["x"][1], 0.0)
    np.testing.assert_allclose(forms["u"][1], 2.0)


def test_chart_frames(flat_field):
    frames = reconstruct_coords(flat_field).to_frames()
    assert set(frames) == {"x", "u", "phi"}
    assert len(frames["x"]) == 81


def test_too_few_slices(make_field, soliton_profile):
    field = make_field(
        soliton_profile,
        np.linspace(0.0, 0.2, 3),
        np.linspace(0.0, 1.0, 9),
        lambda tau, lam: StateZ(1.0, 0.0, 1.0, 0.0),
    )
    with pytest.raises(ValidationError):
        reconstruct_coords(field)


def test_degenerate_metric(make_field, soliton_profile):
    field = make_field(
        soliton_profile,
        np.linspace(0.0, 0.3, 4),
        np.linspace(0.0, 1.0, 9),
        lambda tau, lam: StateZ(1.0, 2.0, 1.0, 0.0),
    )
    with pytest.raises(PositivityError) as error:
        reconstruct_coords(field)
    assert error.value.tau == 0.0
    assert error.value.lam == 0.0
