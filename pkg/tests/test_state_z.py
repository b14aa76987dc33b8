import numpy as np
import pytest

from ricci_hessian_lib import StateZ


def test_pi():
    assert StateZ(2.0, 1.0, 3.0).pi == 5.0


@pytest.mark.parametrize(
    "z, expected",
    [
        (StateZ(1.0, 0.0, 1.0), True),
        (StateZ(-1.0, 0.0, -1.0), False),
        (StateZ(1.0, 2.0, 1.0), False),
        (StateZ(np.array([1.0, 1.0]), np.array([0.0, 1.5]), 1.0), False),
    ],
)
def test_is_admissible(z, expected):
    assert z.is_admissible() is expected


def test_as_array_broadcasts():
    z = StateZ(np.array([1.0, 2.0, 3.0]), 0.5, 1.0)
    array = z.as_array()
    assert array.shape == (4, 3)
    np.testing.assert_array_equal(array[1], [0.5, 0.5, 0.5])
    np.testing.assert_array_equal(array[3], 0.0)


def test_from_array():
    z = StateZ.from_array([1.0, 2.0, 3.0, 4.0])
    assert z == StateZ(1.0, 2.0, 3.0, 4.0)
    with pytest.raises(ValueError):
        StateZ.from_array(np.zeros((3, 5)))


def test_scale():
    assert StateZ(1.0, -5.0, 2.0, 0.5).scale() == 5.0
