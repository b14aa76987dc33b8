import numpy as np
import pytest

from ricci_hessian_lib._orders import observed_orders


def test_second_order():
    orders = observed_orders([1e-2, 2.5e-3, 6.25e-4], [0.1, 0.05, 0.025])
    assert np.isnan(orders[0])
    np.testing.assert_allclose(orders[1:], 2.0)


@pytest.mark.parametrize(
    "errors, spacings",
    [
        ([1e-2, 0.0], [0.1, 0.05]),
        ([1e-2, np.nan], [0.1, 0.05]),
        ([1e-2, 1e-3], [0.1, 0.1]),
    ],
)
def test_undefined_orders(errors, spacings):
    assert np.all(np.isnan(observed_orders(errors, spacings)))
