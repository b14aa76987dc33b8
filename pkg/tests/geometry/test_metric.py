import numpy as np
import pytest

from ricci_hessian_lib import StateZ
from ricci_hessian_lib.geometry import metric_at


def test_metric_components():
    sample = metric_at(StateZ(2.0, 1.0, 3.0))
    expected = np.array(
        [
            [2.0, 0.0, 1.0, 0.0],
            [0.0, 2.0, 0.0, 1.0],
            [1.0, 0.0, 3.0, 0.0],
            [0.0, 1.0, 0.0, 3.0],
        ]
    )
    np.testing.assert_array_equal(sample.matrix, expected)
    assert sample.pi == 5.0
    assert sample.positive is True
    assert np.linalg.det(sample.matrix) == pytest.approx(25.0)


@pytest.mark.parametrize(
    "z", [StateZ(1.0, 2.0, 1.0), StateZ(-1.0, 0.0, 1.0)]
)
def test_metric_not_positive(z):
    sample = metric_at(z)
    assert not sample.positive
    assert np.any(np.linalg.eigvalsh(sample.matrix) <= 0)


def test_metric_on_arrays():
    z = StateZ(np.array([1.0, 1.0]), np.array([0.0, 2.0]), 1.0)
    sample = metric_at(z)
    assert sample.matrix.shape == (2, 4, 4)
    np.testing.assert_array_equal(sample.pi, [1.0, -3.0])
    np.testing.assert_array_equal(sample.positive, [True, False])
