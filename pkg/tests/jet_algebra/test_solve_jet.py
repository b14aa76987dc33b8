import numpy as np
import pytest

from ricci_hessian_lib import StateZ
from ricci_hessian_lib.exceptions import AdmissibilityError
from ricci_hessian_lib.profiles import ProfileEval
from ricci_hessian_lib.jet_algebra import (
    Jet1,
    affine_basis,
    residual_consequences,
    residual_scale,
    residual_system,
    solve_jet,
)


@pytest.fixture
def flat_prof():
    return ProfileEval.from_values(2.0)


@pytest.fixture
def generic_state():
    return StateZ(2.0, 0.5, 1.5, 0.3)


@pytest.fixture
def generic_prof():
    return ProfileEval.from_values(1.2, alpha1=0.4, F=0.7, F1=-0.3)


def test_solve_jet_flat_state(flat_state, flat_prof):
    jet = solve_jet(flat_state, flat_prof, 0.0, 1.0)
    assert jet == Jet1(0.0, 1.0, 2.0, 0.0, 1.0, 2.0, -1.0, 0.0)


def test_solve_jet_satisfies_system(generic_state, generic_prof):
    jet = solve_jet(generic_state, generic_prof, 0.8, -0.6)
    np.testing.assert_allclose(
        residual_system(generic_state, jet, generic_prof), 0.0, atol=1e-13
    )
    np.testing.assert_allclose(
        residual_consequences(generic_state, jet, generic_prof),
        0.0,
        atol=1e-13,
    )


def test_solve_jet_vectorized(rng):
    n = 50
    z = StateZ(
        1.0 + rng.random(n),
        0.5 * (rng.random(n) - 0.5),
        1.0 + rng.random(n),
        rng.standard_normal(n),
    )
    prof = ProfileEval.from_values(
        rng.standard_normal(n),
        rng.standard_normal(n),
        rng.standard_normal(n),
        rng.standard_normal(n),
    )
    jet = solve_jet(z, prof, rng.standard_normal(n), rng.standard_normal(n))
    residuals = residual_system(z, jet, prof)
    assert residuals.shape == (6, n)
    np.testing.assert_allclose(residuals, 0.0, atol=1e-12)


def test_solve_jet_rejects_nonpositive_q(generic_prof):
    with pytest.raises(AdmissibilityError):
        solve_jet(StateZ(0.0, 0.0, 1.0), generic_prof, 0.0, 0.0)
    with pytest.raises(AdmissibilityError):
        solve_jet(
            StateZ(np.array([1.0, -1.0]), 0.0, 1.0), generic_prof, 0.0, 0.0
        )


def test_affine_basis(generic_state, generic_prof):
    particular, e1, e2 = affine_basis(generic_state, generic_prof)
    assert e1.Q_tau == pytest.approx(1.0)
    assert e1.Q_lam == pytest.approx(0.0)
    assert e2.Q_tau == pytest.approx(0.0)
    assert e2.Q_lam == pytest.approx(1.0)
    combined = particular + 0.8 * e1 + (-0.6) * e2
    expected = solve_jet(generic_state, generic_prof, 0.8, -0.6)
    np.testing.assert_allclose(
        combined.to_array(), expected.to_array(), atol=1e-13
    )


def test_basis_directions_solve_homogeneous_system(
    generic_state, generic_prof
):
    particular, e1, e2 = affine_basis(generic_state, generic_prof)
    for direction in (e1, e2):
        shifted = particular + direction
        np.testing.assert_allclose(
            residual_system(generic_state, shifted, generic_prof),
            0.0,
            atol=1e-13,
        )


def test_residual_detects_wrong_jet(generic_state, generic_prof):
    jet = solve_jet(generic_state, generic_prof, 0.8, -0.6)
    wrong = jet + Jet1(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1e-3)
    residuals = residual_system(generic_state, wrong, generic_prof)
    assert residuals[5] == pytest.approx(1e-3)
    np.testing.assert_allclose(residuals[:5], 0.0, atol=1e-13)


def test_residual_scale(generic_state, generic_prof):
    assert residual_scale(generic_state, generic_prof) == pytest.approx(3.0)


def test_jet_arithmetic():
    a = Jet1.from_array(np.arange(8.0))
    b = Jet1.from_array(np.ones(8))
    assert (a + b) - b == a
    assert 2.0 * a == a + a
    assert -a == a * -1.0
    assert a.tau_block().values() == (0.0, 1.0, 2.0, 3.0)
    assert a.lam_block().values() == (4.0, 5.0, 6.0, 7.0)
    assert Jet1.zero().to_array().shape == (8,)


def test_jet_from_array_wrong_length():
    with pytest.raises(ValueError):
        Jet1.from_array(np.zeros(7))
