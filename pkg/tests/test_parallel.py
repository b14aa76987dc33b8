import pytest

from ricci_hessian_lib._parallel import (
    THREADS_ENV_VAR,
    parallel_map,
    worker_count,
)
from ricci_hessian_lib.exceptions import ConfigError


def test_default_worker_count(monkeypatch):
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
    assert 1 <= worker_count() <= 4


def test_worker_count_from_environment(monkeypatch):
    monkeypatch.setenv(THREADS_ENV_VAR, "3")
    assert worker_count() == 3


@pytest.mark.parametrize("value", ["0", "-2", "many"])
def test_invalid_worker_count(monkeypatch, value):
    monkeypatch.setenv(THREADS_ENV_VAR, value)
    with pytest.raises(ConfigError):
        worker_count()


@pytest.mark.parametrize("threads", ["1", "4"])
def test_parallel_map_preserves_order(monkeypatch, threads):
    monkeypatch.setenv(THREADS_ENV_VAR, threads)
    assert parallel_map(lambda v: v * v, range(10)) == [
        v * v for v in range(10)
    ]
