import numpy as np
import pytest

from ricci_hessian_lib.exceptions import ConfigError, DegenerateStudyError
from ricci_hessian_lib.evolution import (
    ConvergenceConfig,
    EvolutionConfig,
    convergence_study,
)


@pytest.fixture
def study_config(soliton_profile):
    return ConvergenceConfig(
        profile=soliton_profile,
        tau0=0.0,
        tau1=0.05,
        lam0=0.0,
        lam1=2.0,
        levels=(65, 33),
    )


def test_convergence_study(study_config):
    table = convergence_study(study_config)
    assert table["n_lam"].tolist() == [33, 65]
    assert table["n_steps"].tolist()[1] == 2 * table["n_steps"].tolist()[0]
    assert not table["truncated"].any()
    assert table["reliable"].all()
    assert np.isnan(table["difference"].iloc[0])
    assert table["difference"].iloc[1] > 0
    assert np.isnan(table["order_constraint"].iloc[0])
    assert table["order_constraint"].iloc[1] > 2.0
    assert table["constraint"].iloc[1] < table["constraint"].iloc[0]
    assert set(table.columns) >= {
        "h",
        "c1",
        "c2",
        "system_residual",
        "order_system",
        "order_difference",
    }


def test_coarse_levels_warn(soliton_profile):
    config = ConvergenceConfig(
        profile=soliton_profile,
        tau0=0.0,
        tau1=0.05,
        lam0=0.0,
        lam1=2.0,
        levels=(9, 17),
    )
    with pytest.warns(UserWarning, match="too coarse"):
        table = convergence_study(config)
    assert not table["reliable"].iloc[0]


def test_single_level(study_config):
    config = ConvergenceConfig(
        profile=study_config.profile,
        tau0=0.0,
        tau1=0.05,
        lam0=0.0,
        lam1=2.0,
        levels=(33,),
    )
    with pytest.raises(DegenerateStudyError):
        convergence_study(config)


def test_repeated_level(study_config):
    config = ConvergenceConfig(
        profile=study_config.profile,
        tau0=0.0,
        tau1=0.05,
        lam0=0.0,
        lam1=2.0,
        levels=(33, 33),
    )
    with pytest.raises(DegenerateStudyError):
        convergence_study(config)


@pytest.mark.parametrize(
    "overrides",
    [{"lam1": 0.0}, {"tau1": 0.0}, {"levels": (4, 9)}],
)
def test_invalid_config(soliton_profile, overrides):
    kwargs = {
        "profile": soliton_profile,
        "tau0": 0.0,
        "tau1": 0.05,
        "lam0": 0.0,
        "lam1": 2.0,
        "evolution": EvolutionConfig(),
    }
    kwargs.update(overrides)
    with pytest.raises(ConfigError):
        ConvergenceConfig(**kwargs)


def test_constraints_converge_at_fourth_order(soliton_profile):
    config = ConvergenceConfig(
        profile=soliton_profile,
        tau0=0.0,
        tau1=0.05,
        lam0=0.0,
        lam1=2.0,
        levels=(65, 129, 257),
        q_fn="1 + lam/2",
        s_fn="0",
    )
    table = convergence_study(config)
    assert not table["truncated"].any()
    steps = table["n_steps"].tolist()
    assert steps == [steps[0], 2 * steps[0], 4 * steps[0]]
    assert table["order_constraint"].iloc[-1] >= 3.5
    assert table["constraint"].iloc[-1] <= 1e-6
