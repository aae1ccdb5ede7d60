import math

import numpy as np
import pytest

from stieltjes_lab.errors import ParameterError, QuadratureError
from stieltjes_lab.quadrature import QuadraturePolicy, rule, tanh_sinh, truncation_point


class TestTanhSinh:
    def test_polynomial(self):
        est = tanh_sinh(lambda x, l, r: x**2, -1.0, 1.0)
        assert abs(est.value - 2.0 / 3.0) < 1e-14

    @pytest.mark.parametrize("e", [-0.5, -0.9, 0.5, 2.0])
    def test_algebraic_endpoints(self, e):
        # int_0^1 x^e (1-x)^e dx = B(e+1, e+1)
        est = tanh_sinh(lambda x, l, r: l**e * r**e, 0.0, 1.0, (e, e))
        exact = math.exp(2 * math.lgamma(e + 1) - math.lgamma(2 * e + 2))
        assert abs(est.value - exact) < 1e-12 * exact

    def test_distances_are_exact_near_the_ends(self):
        x, left, right, w = rule(0.0, 1.0, 0.125, truncation_point((-0.9, 0.0)))
        assert left.min() < 1e-100
        assert np.all(left > 0) and np.all(right > 0)
        assert abs(w.sum() - 1.0) < 1e-14

    def test_complex_integrand(self):
        z = 2.0 + 1.0j
        est = tanh_sinh(lambda x, l, r: 1.0 / (z - x), -1.0, 1.0)
        exact = np.log(z + 1) - np.log(z - 1)
        assert abs(est.value - exact) < 1e-13

    def test_budget_exhaustion(self):
        with pytest.raises(QuadratureError):
            tanh_sinh(lambda x, l, r: np.sin(200.0 * x), 0.0, 1.0, policy=QuadraturePolicy(abscissae_budget=40))

    def test_bad_inputs(self):
        with pytest.raises(ParameterError):
            tanh_sinh(lambda x, l, r: x, 1.0, 0.0)
        with pytest.raises(ParameterError):
            truncation_point((-1.0, 0.0))
        with pytest.raises(ParameterError):
            QuadraturePolicy(abscissae_budget=4)
