import math

import numpy as np
import pytest

from ricci_hessian_lib import StateZ
from ricci_hessian_lib._orders import observed_orders
from ricci_hessian_lib.exceptions import (
    ConfigError,
    DomainError,
    PositivityError,
    ValidationError,
)
from ricci_hessian_lib.profiles import ProfileParams, transnormal_solution
from ricci_hessian_lib.evolution import (
    EvolutionConfig,
    OnFailure,
    Slice,
    banded_max,
    evolve,
    generate_initial_data,
    system_residuals,
)


def _transnormal_slice(profile, tau, n_lam=9, shear=0.0):
    lambda_grid = np.linspace(0.0, 1.0, n_lam)
    z = transnormal_solution(profile, tau, shear=shear)
    ones = np.ones_like(lambda_grid)
    return Slice(
        tau, lambda_grid, StateZ(*(v * ones for v in z.fields())), profile
    )


@pytest.mark.parametrize("shear", [0.0, 0.5])
def test_rk4_order_on_exact_solution(tanh_profile, shear):
    tau0, tau1 = 0.1, 0.6
    initial = _transnormal_slice(tanh_profile, tau0, shear=shear)
    exact = transnormal_solution(tanh_profile, tau1, shear=shear)
    errors = []
    for n_steps in (10, 20):
        field = evolve(initial, tau1, n_steps)
        assert not field.truncated
        assert field.n_tau == n_steps + 1
        assert field.tau_grid[-1] == tau1
        errors.append(float(np.max(np.abs(field.q[-1] - exact.Q))))
    orders = observed_orders(errors, [0.05, 0.025])
    assert 3.5 < orders[-1] < 4.5


def test_cigar_evolution_keeps_lambda_independence(cigar_profile):
    initial = _transnormal_slice(cigar_profile, 0.0)
    field = evolve(initial, 0.3, 30)
    np.testing.assert_allclose(
        field.q[-1], math.exp(0.6) + 1.0, rtol=1e-8
    )
    np.testing.assert_allclose(field.s, 0.0, atol=1e-12)
    np.testing.assert_allclose(field.b, 1.0, atol=1e-12)
    np.testing.assert_allclose(field.constraint_history, 0.0, atol=1e-10)


def test_evolve_backwards(cigar_profile):
    initial = _transnormal_slice(cigar_profile, 0.2)
    field = evolve(initial, -0.1, 30)
    assert field.tau_spacing < 0
    assert field.tau_grid[-1] == -0.1
    np.testing.assert_allclose(
        field.q[-1], math.exp(-0.2) + 1.0, rtol=1e-8
    )


def test_truncation_when_q_vanishes():
    profile = ProfileParams("const2", kappa=0.5)
    initial = _transnormal_slice(profile, 0.0)
    field = evolve(initial, -1.0, 20)
    assert field.truncated
    assert field.truncation_reason.startswith("PositivityError")
    assert -0.35 < field.tau_grid[-1] < 0.0
    assert field.verified_tau_range == (0.0, float(field.tau_grid[-1]))
    assert len(field.constraint_history) == field.n_tau
    assert len(field.diagnostics) == field.n_tau


def test_raise_when_q_vanishes():
    profile = ProfileParams("const2", kappa=0.5)
    initial = _transnormal_slice(profile, 0.0)
    config = EvolutionConfig(on_failure="raise")
    assert config.on_failure is OnFailure.RAISE
    with pytest.raises(PositivityError) as info:
        evolve(initial, -1.0, 20, config)
    assert info.value.tau < -0.3


def test_evolve_refuses_to_cross_a_pole():
    profile = ProfileParams("reciprocal", theta=1.0, kappa=1.0)
    lambda_grid = np.linspace(0.0, 1.0, 9)
    ones = np.ones_like(lambda_grid)
    initial = Slice(
        -0.1, lambda_grid, StateZ(ones, 0 * ones, ones, 0 * ones), profile
    )
    with pytest.raises(DomainError):
        evolve(initial, 0.1, 10)


def test_default_number_of_steps(soliton_profile):
    initial = generate_initial_data(
        soliton_profile, 0.0, np.linspace(0.0, 1.0, 33)
    )
    config = EvolutionConfig(cfl=0.5)
    field = evolve(initial, 0.05, config=config)
    assert field.n_tau == math.ceil(0.05 / (0.5 / 32)) + 1


def test_edge_bands_grow(soliton_profile):
    initial = generate_initial_data(
        soliton_profile, 0.0, np.linspace(0.0, 2.0, 65)
    )
    field = evolve(initial, 0.1, 10)
    assert field.edge_bands[0] == 4
    assert field.edge_bands == sorted(field.edge_bands)
    assert field.edge_bands[-1] == 4 + math.ceil(2.0 * 0.1 / (2.0 / 64))
    lower, upper = field.verified_lambda_range
    assert 0.0 < lower < upper < 2.0


def test_constraints_stay_small(soliton_profile):
    initial = generate_initial_data(
        soliton_profile, 0.0, np.linspace(0.0, 2.0, 65)
    )
    field = evolve(initial, 0.1, 10)
    assert np.all(np.isfinite(field.constraint_history))
    assert np.max(field.constraint_history) < 1e-3
    residuals = system_residuals(field)
    assert residuals.shape == (6, field.n_tau, field.n_lam)
    assert banded_max(residuals, field.edge_bands) < 1e-2


def test_system_residuals_need_five_slices(soliton_profile):
    initial = generate_initial_data(
        soliton_profile, 0.0, np.linspace(0.0, 1.0, 17)
    )
    with pytest.raises(ValidationError):
        system_residuals(evolve(initial, 0.01, 2))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"cfl": 0.0},
        {"edge_columns": -1},
        {"edge_speed": -1.0},
        {"dissipation": -0.1},
        {"dissipation": 1.5},
        {"on_failure": "ignore"},
    ],
)
def test_invalid_evolution_config(kwargs):
    with pytest.raises(ConfigError):
        EvolutionConfig(**kwargs)


def test_banded_max():
    values = np.zeros((2, 9))
    values[0, 0] = 5.0
    values[1, 4] = -2.0
    assert banded_max(values, [1, 1]) == 2.0
    assert banded_max(values, [0, 1]) == 5.0


@pytest.mark.parametrize("dissipation, amplitude", [(1.0, 0.0), (0.0, 1e-3)])
def test_filter_removes_grid_scale_mode(
    cigar_profile, dissipation, amplitude
):
    initial = _transnormal_slice(cigar_profile, 0.0, n_lam=17)
    mode = (-1.0) ** np.arange(17)
    state = initial.state
    noisy = Slice(
        0.0,
        initial.lambda_grid,
        StateZ(state.Q, state.S, state.B + 1e-3 * mode, state.G),
        cigar_profile,
    )
    config = EvolutionConfig(dissipation=dissipation)
    field = evolve(noisy, 1e-9, 1, config)
    np.testing.assert_allclose(
        field.b[-1, 3:-3], 1.0 + amplitude * mode[3:-3], atol=1e-8
    )
