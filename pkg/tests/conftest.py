import json

import numpy as np
import pytest

from ricci_hessian_lib import StateZ
from ricci_hessian_lib.profiles import ProfileParams, transnormal_solution
from ricci_hessian_lib.evolution import (
    GridField,
    evolve,
    generate_initial_data,
)


def grid_field_from_function(
    profile: ProfileParams,
    tau_grid: np.ndarray,
    lambda_grid: np.ndarray,
    state_fn,
) -> GridField:
    """Samples ``state_fn(tau_mesh, lam_mesh) -> StateZ`` on a grid."""
    tau_mesh, lam_mesh = np.meshgrid(tau_grid, lambda_grid, indexing="ij")
    state = state_fn(tau_mesh, lam_mesh)
    q, s, b, g = (
        np.asarray(v, dtype=float) + np.zeros_like(tau_mesh)
        for v in state.fields()
    )
    return GridField(
        tau_grid=np.asarray(tau_grid, dtype=float),
        lambda_grid=np.asarray(lambda_grid, dtype=float),
        q=q,
        s=s,
        b=b,
        g=g,
        profile=profile,
    )


def transnormal_field(
    profile: ProfileParams,
    n_tau: int,
    n_lam: int,
    tau_range: tuple[float, float] = (0.0, 0.5),
    lambda_range: tuple[float, float] = (0.0, 1.0),
    shear: float = 0.0,
    b0: float = 1.0,
) -> GridField:
    return grid_field_from_function(
        profile,
        np.linspace(*tau_range, n_tau),
        np.linspace(*lambda_range, n_lam),
        lambda tau, lam: transnormal_solution(
            profile, tau, shear=shear, b0=b0
        ),
    )


def evolved_levels(
    profile: ProfileParams,
    tau0: float,
    b0: float = 1.0,
    g0: float = 0.0,
    levels: tuple[int, ...] = (33, 65, 129),
    window: float = 0.025,
) -> list[GridField]:
    """Evolves the seeds ``Q = 1 + λ/2``, ``S = 0`` on ``λ ∈ [0, 1]`` with
    ``(n - 1) / 2`` steps per level."""
    fields = []
    for n in levels:
        initial = generate_initial_data(
            profile,
            tau0,
            np.linspace(0.0, 1.0, n),
            q_fn="1 + lam/2",
            s_fn="0",
            b0=b0,
            g0=g0,
        )
        fields.append(evolve(initial, tau0 + window, (n - 1) // 2))
    return fields


@pytest.fixture
def make_field():
    return grid_field_from_function


@pytest.fixture
def make_transnormal_field():
    return transnormal_field


@pytest.fixture
def make_evolved_levels():
    return evolved_levels


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def soliton_profile():
    return ProfileParams("const2")


@pytest.fixture
def tanh_profile():
    return ProfileParams("tanh", theta=4.0, kappa=-1.0)


@pytest.fixture
def flat_state():
    return StateZ(1.0, 0.0, 1.0, 0.0)


@pytest.fixture
def flat_field(soliton_profile):
    return grid_field_from_function(
        soliton_profile,
        np.linspace(0.0, 1.0, 9),
        np.linspace(0.0, 1.0, 9),
        lambda tau, lam: StateZ(1.0, 0.0, 1.0, 0.0),
    )


@pytest.fixture
def stretched_field(soliton_profile):
    return grid_field_from_function(
        soliton_profile,
        np.linspace(0.0, 1.0, 9),
        np.linspace(0.0, 1.0, 9),
        lambda tau, lam: StateZ(2.0, 0.0, 0.5, 0.0),
    )


@pytest.fixture
def cigar_profile():
    return ProfileParams("const2", kappa=-1.0)


@pytest.fixture
def cigar_field(cigar_profile):
    return transnormal_field(cigar_profile, 33, 33)


@pytest.fixture
def sheared_cigar_fields(cigar_profile):
    return [
        transnormal_field(cigar_profile, n, n, shear=0.5)
        for n in (33, 65)
    ]


@pytest.fixture
def run_config_data(tmp_path):
    return {
        "schema_version": 1,
        "profile": {"family": "const2", "theta": 0.0, "kappa": 0.0},
        "grid": {
            "tau0": 0.0,
            "tau1": 0.05,
            "lam0": 0.0,
            "lam1": 2.0,
            "n_lam": 33,
            "n_tau": 9,
        },
        "checks": {"series_order": 4, "resample_n": 17},
        "gates": {"closedness": 1.0},
        "output_dir": str(tmp_path / "out"),
    }


@pytest.fixture
def write_config(tmp_path):
    def write(data, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write
