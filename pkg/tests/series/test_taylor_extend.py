import dataclasses
import math

import numpy as np
import pytest
import sympy

from ricci_hessian_lib import StateZ
from ricci_hessian_lib.exceptions import (
    AdmissibilityError,
    OrderError,
    RadiusError,
    ValidationError,
)
from ricci_hessian_lib.profiles import ProfileParams, eval_profile
from ricci_hessian_lib.jet_algebra import solve_jet
from ricci_hessian_lib.evolution import evolve, generate_initial_data
from ricci_hessian_lib.series import (
    MAX_ORDER,
    TaylorZ,
    eval_taylor,
    profile_taylor_coefficients,
    sample_grid,
    seed_series,
    taylor_extend,
)


@pytest.fixture
def seeded_expansion(tanh_profile):
    seeds = seed_series("2 + lam", "0.2*cos(lam)", 0.0, 8)
    z = StateZ(2.0, 0.2, 1.5, 0.1)
    return taylor_extend(
        z, tanh_profile, 0.4, None, None, 8, seed_lambda_series=seeds
    )


def _cigar_expansion(cigar_profile, order):
    z = StateZ(2.0, 0.0, 1.0, 0.0)
    return taylor_extend(z, cigar_profile, 0.0, 2.0, 0.0, order)


def test_profile_coefficients_match_sympy(tanh_profile):
    tau = sympy.Symbol("tau")
    alpha = 2 * sympy.tanh(tau)
    F = 2 - 2 * tau * sympy.tanh(tau) - 2 * sympy.tanh(tau)
    a, f = profile_taylor_coefficients(eval_profile(tanh_profile, 0.3), 6)
    for k in range(7):
        expected_a = sympy.diff(alpha, tau, k).subs(tau, 0.3)
        expected_f = sympy.diff(F, tau, k).subs(tau, 0.3)
        assert a[k] == pytest.approx(
            float(expected_a) / math.factorial(k), rel=1e-10, abs=1e-12
        )
        assert f[k] == pytest.approx(
            float(expected_f) / math.factorial(k), rel=1e-10, abs=1e-12
        )


@pytest.mark.parametrize(
    "z, q_tau, q_lam",
    [
        (StateZ(1.0, 0.0, 1.0, 0.0), 0.0, 1.0),
        (StateZ(2.0, 0.5, 1.5, 0.3), 0.8, -0.6),
    ],
)
def test_first_order_matches_solve_jet(tanh_profile, z, q_tau, q_lam):
    t = taylor_extend(z, tanh_profile, 0.5, q_tau, q_lam, 1)
    state, jet = t.evaluate_jet(0.5, 0.0)
    np.testing.assert_allclose(state.as_array(), z.as_array())
    expected = solve_jet(z, eval_profile(tanh_profile, 0.5), q_tau, q_lam)
    np.testing.assert_allclose(
        jet.to_array(), expected.to_array(), atol=1e-12
    )


def test_residual_coefficients_vanish(seeded_expansion):
    residuals = seeded_expansion.residual_coefficients()
    assert residuals.shape == (6, 9, 9)
    scale = 1.0 + max(np.max(np.abs(c)) for c in seeded_expansion.fields())
    assert np.max(np.abs(residuals)) < 1e-10 * scale
    consequences = seeded_expansion.consequence_coefficients()
    assert np.max(np.abs(consequences)) < 1e-10 * scale


def test_seed_rows_are_kept(seeded_expansion):
    np.testing.assert_allclose(seeded_expansion.q[0, :3], [2.0, 1.0, 0.0])
    np.testing.assert_allclose(
        seeded_expansion.s[0, :3], [0.2, 0.0, -0.1], atol=1e-15
    )


def test_coefficients_above_order_vanish(seeded_expansion):
    i, j = np.indices((9, 9))
    for c in seeded_expansion.fields():
        assert np.all(c[i + j > 8] == 0.0)


def test_cigar_expansion_is_exponential(cigar_profile):
    t = _cigar_expansion(cigar_profile, 10)
    expected = [2.0] + [2.0**k / math.factorial(k) for k in range(1, 11)]
    np.testing.assert_allclose(t.q[:, 0], expected, rtol=1e-12)
    np.testing.assert_allclose(t.q[:, 1:], 0.0, atol=1e-14)
    np.testing.assert_allclose(t.s, 0.0, atol=1e-14)
    assert t.b[0, 0] == 1.0
    np.testing.assert_allclose(t.b.ravel()[1:], 0.0, atol=1e-14)
    state = eval_taylor(t, -0.3, 0.2)
    assert state.Q == pytest.approx(math.exp(-0.6) + 1.0, rel=1e-9)


def test_default_trust_radius():
    z = StateZ(1.0, 0.0, 1.0, 0.0)
    t = taylor_extend(z, ProfileParams("tanh"), 0.0, 0.0, 1.0, 3)
    assert t.trust_radius == 1.0
    near_pole = taylor_extend(
        z, ProfileParams("reciprocal"), 0.4, 0.0, 1.0, 3
    )
    assert near_pole.trust_radius == pytest.approx(0.1)


def test_radius_error(cigar_profile):
    t = _cigar_expansion(cigar_profile, 4)
    with pytest.raises(RadiusError):
        t.evaluate(1.5, 0.0)
    with pytest.raises(RadiusError):
        t.evaluate_jet(np.array([0.0, 0.8]), np.array([0.0, 0.8]))


@pytest.mark.parametrize("order", [0, MAX_ORDER + 1])
def test_order_error(cigar_profile, order):
    with pytest.raises(OrderError):
        taylor_extend(
            StateZ(1.0, 0.0, 1.0, 0.0), cigar_profile, 0.0, 0.0, 1.0, order
        )


@pytest.mark.parametrize(
    "z", [StateZ(-1.0, 0.0, 1.0, 0.0), StateZ(1.0, 1.0, 1.0, 0.0)]
)
def test_inadmissible_center(cigar_profile, z):
    with pytest.raises(AdmissibilityError):
        taylor_extend(z, cigar_profile, 0.0, 0.0, 1.0, 3)


def test_missing_slopes(cigar_profile):
    with pytest.raises(ValidationError):
        taylor_extend(
            StateZ(1.0, 0.0, 1.0, 0.0), cigar_profile, 0.0, None, 1.0, 3
        )


def test_seed_series_must_match_state(tanh_profile):
    seeds = seed_series("2 + lam", "0.2*cos(lam)", 0.0, 4)
    with pytest.raises(ValidationError):
        taylor_extend(
            StateZ(3.0, 0.2, 1.5, 0.0),
            tanh_profile,
            0.4,
            None,
            None,
            4,
            seed_lambda_series=seeds,
        )
    with pytest.raises(ValidationError):
        taylor_extend(
            StateZ(2.0, 0.2, 1.5, 0.0),
            tanh_profile,
            0.4,
            None,
            5.0,
            4,
            seed_lambda_series=seeds,
        )


def test_dict_round_trip(seeded_expansion):
    data = seeded_expansion.to_dict()
    assert len(data["q"]) == 9
    assert len(data["q"][8]) == 1
    restored = TaylorZ.from_dict(data)
    assert restored.center == seeded_expansion.center
    assert restored.profile == seeded_expansion.profile
    for a, b in zip(restored.fields(), seeded_expansion.fields()):
        np.testing.assert_array_equal(a, b)


def test_from_dict_bad_triangle(seeded_expansion):
    data = seeded_expansion.to_dict()
    data["b"] = data["b"][:-1]
    with pytest.raises(ValidationError):
        TaylorZ.from_dict(data)


def test_sample_grid_matches_exact_solution(cigar_profile):
    t = _cigar_expansion(cigar_profile, 10)
    taus = np.linspace(-0.2, 0.2, 5)
    field = sample_grid(t, taus, np.linspace(-0.2, 0.2, 9))
    np.testing.assert_allclose(
        field.q, (np.exp(2 * taus) + 1.0)[:, np.newaxis], rtol=1e-10
    )
    assert field.edge_bands == [0] * 5
    assert np.max(field.constraint_history) < 1e-10


def test_sample_grid_needs_profile(cigar_profile):
    t = dataclasses.replace(_cigar_expansion(cigar_profile, 4), profile=None)
    with pytest.raises(ValidationError):
        sample_grid(t, [0.0], np.linspace(-0.1, 0.1, 5))


def test_expansion_agrees_with_evolution(soliton_profile):
    grid = np.linspace(0.0, 2.0, 65)
    initial = generate_initial_data(soliton_profile, 0.0, grid)
    field = evolve(initial, 0.05, 10)
    center = 32
    z = StateZ(*(float(v[center]) for v in initial.state.fields()))
    t = taylor_extend(
        z,
        soliton_profile,
        0.0,
        None,
        None,
        8,
        seed_lambda_series=seed_series(None, None, grid[center], 8),
        lambda_star=grid[center],
    )
    for k in (center - 2, center, center + 2):
        state = t.evaluate(0.05, grid[k])
        assert state.Q == pytest.approx(field.q[-1, k], abs=1e-5)
        assert state.B == pytest.approx(field.b[-1, k], abs=1e-5)


def test_expansion_matches_grid_on_a_disc(soliton_profile):
    grid = np.linspace(0.0, 2.0, 65)
    h = grid[1] - grid[0]
    initial = generate_initial_data(
        soliton_profile, 0.0, grid, q_fn="1 + lam/2", s_fn="0"
    )
    field = evolve(initial, 0.1, 20)
    assert not field.truncated
    center = 32
    radius = 0.1
    z = StateZ(*(float(v[center]) for v in initial.state.fields()))
    t = taylor_extend(
        z,
        soliton_profile,
        0.0,
        None,
        None,
        8,
        seed_lambda_series=seed_series("1 + lam/2", "0", grid[center], 8),
        lambda_star=grid[center],
    )
    bound = 0.1 * radius**8 + 5 * h**4
    checked = 0
    for i, tau in enumerate(field.tau_grid):
        for k, lam in enumerate(grid):
            if math.hypot(tau, lam - grid[center]) > radius:
                continue
            state = t.evaluate(tau, lam)
            expected = (field.q, field.s, field.b, field.g)
            for value, values in zip(state.fields(), expected):
                assert abs(value - values[i, k]) <= bound
            checked += 1
    assert checked > 20
