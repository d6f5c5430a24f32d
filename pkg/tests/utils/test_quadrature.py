import math

import numpy as np
import pytest

from selberg.errors import QuadratureError
from selberg.utils import adaptive_gauss, composite_gauss_nodes, tail_integral


def test_adaptive_gauss_complex_integrand():
    result = adaptive_gauss(lambda x: np.exp(1j * x), 0.0, math.pi, tol=1e-12)
    assert abs(result.value - 2j) < 1e-11
    assert result.error <= 1e-12


def test_adaptive_gauss_reversed_bounds_and_breakpoints():
    forward = adaptive_gauss(lambda x: np.abs(x - 0.3), 0.0, 1.0, tol=1e-12, breakpoints=[0.3])
    backward = adaptive_gauss(lambda x: np.abs(x - 0.3), 1.0, 0.0, tol=1e-12, breakpoints=[0.3])
    assert abs(forward.value - (0.045 + 0.245)) < 1e-12
    assert backward.value == -forward.value


def test_adaptive_gauss_gives_up_on_singularity():
    with pytest.raises(QuadratureError):
        adaptive_gauss(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0, tol=1e-12, max_depth=4)


def test_composite_nodes_integrate_polynomials():
    x, w = composite_gauss_nodes(-2.0, 3.0, 7, 8)
    assert abs(np.dot(w, x**5) - (3.0**6 - 2.0**6) / 6.0) < 1e-9


@pytest.mark.parametrize("lower", [2.0, 10.0, 1e4])
def test_tail_integral_closed_form(lower):
    assert tail_integral(2.0, 0.0, lower) == pytest.approx(1.0 / lower, rel=1e-12)
    # x^-3 log x integrates to (2 log L + 1) / (4 L^2)
    expected = (2.0 * math.log(lower) + 1.0) / (4.0 * lower**2)
    assert tail_integral(3.0, 1.0, lower) == pytest.approx(expected, rel=1e-12)


def test_tail_integral_diverges():
    assert tail_integral(1.0, 0.0, 10.0) == math.inf
