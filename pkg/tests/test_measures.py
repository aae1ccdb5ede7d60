import math

import numpy as np
import pytest

from stieltjes_lab import measures as ms
from stieltjes_lab.errors import ParameterError


def _mass(m):
    return ms.integrate(m, np.ones_like).value


class TestBetaFamily:
    def test_uniform_density(self):
        m = ms.beta_measure(ms.BetaParams(0.0, 0.0))
        x = np.array([-0.5, 0.0, 0.7])
        assert np.allclose(m.density(x, x + 1.0, 1.0 - x), 0.5)

    def test_wigner_density(self):
        x = np.array([-0.3, 0.2, 0.9])
        got = ms.wigner().density(x, x + 1.0, 1.0 - x)
        assert np.allclose(got, 2.0 / np.pi * np.sqrt(1.0 - x * x), rtol=1e-14)

    def test_arcsine_density(self):
        x = np.array([-0.3, 0.2, 0.9])
        got = ms.arcsine().density(x, x + 1.0, 1.0 - x)
        assert np.allclose(got, 1.0 / (np.pi * np.sqrt(1.0 - x * x)), rtol=1e-14)

    @pytest.mark.parametrize("g, b", [(0.0, 0.0), (0.5, 0.5), (-0.5, -0.5), (1.5, 0.5), (0.3, 2.1), (-0.9, 4.0)])
    def test_mass(self, g, b):
        assert abs(_mass(ms.beta_measure(ms.BetaParams(g, b))) - 1.0) < 1e-9

    def test_invalid_parameters(self):
        with pytest.raises(ParameterError):
            ms.BetaParams(-1.0, 0.0)

    def test_moments(self):
        assert abs(ms.moment(ms.wigner(), 2) - 0.25) < 1e-13
        assert abs(ms.moment(ms.wigner(), 4) - 0.125) < 1e-13
        assert abs(ms.moment(ms.arcsine(), 2) - 0.5) < 1e-13
        assert abs(ms.moment(ms.beta_measure(ms.BetaParams(0.0, 0.0)), 2) - 1.0 / 3.0) < 1e-14
        assert abs(ms.integrate(ms.wigner(), lambda x: x).value) < 1e-15

    def test_symmetric_odd_moments_vanish(self):
        for g in (-0.5, 0.0, 1.3):
            m = ms.beta_measure(ms.BetaParams(g, g))
            assert max(abs(ms.moment(m, k)) for k in (1, 3, 5, 7)) < 1e-10


class TestAtomsAndKappa:
    def test_bernoulli(self):
        m = ms.bernoulli_sym()
        assert _mass(m) == 1.0
        assert ms.moment(m, 2) == 1.0

    def test_kappa_examples(self):
        x = np.array([0.1, 0.5, 0.8])
        k2 = ms.kappa(2.0)
        assert np.allclose(k2.density(x, x, 1.0 - x), 1.0)
        k1 = ms.kappa(1.0)
        assert np.allclose(k1.density(x, x, 1.0 - x), 1.0 / (np.pi * np.sqrt(x * (1 - x))), rtol=1e-13)
        k4 = ms.kappa(4.0)
        assert np.allclose(k4.density(x, x, 1.0 - x), 6.0 * x * (1 - x), rtol=1e-13)
        for lam in (0.5, 1.0, 2.0, 4.0):
            assert abs(_mass(ms.kappa(lam)) - 1.0) < 1e-9

    def test_free_poisson(self):
        m = ms.free_poisson_quarter()
        assert abs(_mass(m) - 1.0) < 1e-12
        assert abs(ms.moment(m, 1) - 0.25) < 1e-12
        assert m.density(np.array([1.0]), np.array([1.0]), np.array([0.0]))[0] == 0.0


class TestBernoulliPower:
    def test_lambda_one_is_atomic(self):
        m = ms.bernoulli_power_measure(1.0)
        assert m.density is None
        assert sorted(a.location for a in m.atoms) == [-1.0, 1.0]

    def test_lambda_two(self):
        m = ms.bernoulli_power_measure(2.0)
        assert abs(_mass(m) - 1.0) < 1e-12
        assert abs(ms.moment(m, 2) - 2.0 / 3.0) < 1e-12
        assert abs(ms.moment(m, 4) - 0.6) < 1e-12

    @pytest.mark.parametrize("lam", [1.5, 2.0, 3.0])
    def test_moment_formula(self, lam):
        m = ms.bernoulli_power_measure(lam)
        for k in range(11):
            exact = math.exp(math.lgamma(2 * k + 1) + math.lgamma(lam + k) - math.lgamma(k + 1) - math.lgamma(lam + 2 * k))
            assert abs(ms.moment(m, 2 * k) / exact - 1.0) < 1e-7

    @pytest.mark.parametrize("lam", [0.9, 0.5])
    def test_rejects_small_lambda(self, lam):
        with pytest.raises(ParameterError):
            ms.bernoulli_power_measure(lam)


class TestProducts:
    def test_kappa_product_density(self):
        for lam in (0.5, 1.0, 2.5):
            m = ms.kappa_convolution_density(lam)
            assert abs(_mass(m) - 1.0) < 1e-9
            assert abs(ms.moment(m, 1) - 0.25) < 1e-9

    def test_mult_convolve_examples(self):
        pf = ms.mult_convolve(ms.kappa(2.0), ms.kappa(2.0))
        assert abs(pf(np.ones_like).value - 1.0) < 1e-12
        assert abs(pf(lambda x: x).value - 0.25) < 1e-12
        pf = ms.mult_convolve(ms.kappa(2.0), ms.kappa(3.0))
        exact = (1.0 / 3.0) * ms.moment(ms.kappa(3.0), 2)
        assert abs(pf(lambda x: x**2).value - exact) < 1e-12

    def test_product_density_matches_tensor_rule(self):
        # the closed density of kappa(1) * kappa(2) against the double integral
        pf = ms.mult_convolve(ms.kappa(1.0), ms.kappa(2.0))
        m = ms.kappa_convolution_density(1.0)
        for t in (0.1, 0.3, 0.7):
            f = lambda x, t=t: np.exp(-x / t)
            assert abs(ms.integrate(m, f).value - pf(f).value) < 1e-9

    def test_discretize_mass(self):
        x, w = ms.discretize(ms.bernoulli_power_measure(2.0), 1.0 / 16.0)
        assert abs(w.sum() - 1.0) < 1e-10
        assert x.min() >= -1.0 and x.max() <= 1.0

    def test_unbounded_rejected(self):
        m = ms.MeasureSpec("bad", atoms=(ms.Atom(math.inf, 1.0),))
        with pytest.raises(ParameterError):
            ms.mult_convolve(m, ms.kappa(2.0))


class TestSpecValidation:
    def test_exponent_and_breakpoint_checks(self):
        d = lambda x, l, r: np.ones_like(x)
        with pytest.raises(ParameterError):
            ms.MeasureSpec("x", density=d, exponents=(-1.0, 0.0))
        with pytest.raises(ParameterError):
            ms.MeasureSpec("x", density=d, breakpoints=(2.0,))
        with pytest.raises(ParameterError):
            ms.MeasureSpec("x", atoms=(ms.Atom(0.0, -1.0),))

    def test_pieces_split_at_breakpoints(self):
        m = ms.bernoulli_power_measure(2.0)
        pieces = m.pieces()
        assert [p[:2] for p in pieces] == [(-1.0, 0.0), (0.0, 1.0)]
