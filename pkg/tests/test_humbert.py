import cmath
import math

import numpy as np
import pytest

from stieltjes_lab import humbert as hb
from stieltjes_lab import jacobi as jc
from stieltjes_lab import stieltjes as st
from stieltjes_lab.errors import BranchError, ParameterError, SectorError, ZeroError


class TestCoefficients:
    def test_first_is_one(self):
        assert hb.humbert_coeffs(hb.HumbertParams(1.3, 3), 0.2, 5)[0] == 1.0

    def test_geometric_case(self):
        h = hb.humbert_coeffs(hb.HumbertParams(1.0, 2), 0.0, 6)
        assert np.allclose(h, [1, 0, 0, -1, 0, 0, 1])

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_d1_is_ultraspherical(self, alpha):
        for x in (-0.9, 0.0, 0.4):
            h = hb.humbert_coeffs(hb.HumbertParams(alpha, 1), x, 10)
            for n in range(11):
                assert abs(h[n] - jc.ultraspherical_poly(alpha, n, x)) < 1e-10

    def test_params(self):
        with pytest.raises(ParameterError):
            hb.HumbertParams(-0.6, 2)
        with pytest.raises(ParameterError):
            hb.HumbertParams(1.0, 0)


class TestRoots:
    def test_f_map(self):
        assert hb.f_map(1, 1.0) == 1.0
        assert abs(hb.f_map(2, 1.0) - 2.0 / 3.0) < 1e-15
        with pytest.raises(ZeroError):
            hb.f_map(2, 0.0)

    def test_inverse(self):
        for d in (1, 2, 3):
            r = hb.root_select(d, 2j)
            assert abs(hb.f_map(d, r.z) - 2j) < 1e-10

    def test_asymptotics(self):
        for d in (1, 2, 4):
            y = 1e6j
            assert abs(hb.root_select(d, y).z * (d + 1) * y - 1.0) < 1e-10

    def test_d1_is_wigner(self):
        for y in (0.3 + 0.2j, -2.0 + 0.5j, 3j):
            assert abs(2.0 * hb.root_select(1, y).z - st.stieltjes_wigner(y)) < 1e-11

    def test_branch_point(self):
        with pytest.raises(BranchError):
            hb.root_select(2, hb.branch_points(2)[0])

    def test_2f1_root(self):
        for y in (10j, 2 + 2j, 2j):
            assert abs(hb.root_via_2f1_d2(y) - hb.root_select(2, y).z) < 1e-10

    def test_2f1_root_real(self):
        z = hb.root_via_2f1_d2(5.0)
        assert z.imag == 0.0
        assert hb.trinomial_residual(2, 5.0, z) < 1e-14

    def test_2f1_root_domain(self):
        with pytest.raises(ParameterError):
            hb.root_via_2f1_d2(0.5j)

    def test_sector_error_is_raised_on_disagreement(self):
        with pytest.raises(SectorError):
            hb.root_via_2f1_d2(10j, tol=-1.0)

    def test_series_root(self):
        for d in (1, 2, 3, 4):
            assert hb.series_root_mismatch(d, 3j) < 1e-9

    def test_literal_sign_fails_for_odd_d(self):
        assert hb.series_root_mismatch(3, 3j, literal=True) > 1e-6
        assert hb.series_root_mismatch(4, 3j, literal=True) < 1e-9


class TestGammaZero:
    def test_examples(self):
        assert hb.gamma0_gst_identity_d2(1.0, 5j) < 1e-8
        assert hb.gamma0_gst_identity_d2(2.5, 1 + 3j) < 1e-8
        assert hb.gamma0_gst_identity_d2(0.0, 2j) == 0.0

    def test_preconditions(self):
        with pytest.raises(ParameterError):
            hb.gamma0_gst_identity_d2(1.0, 3.0 - 1j)
        with pytest.raises(ParameterError):
            hb.gamma0_gst_identity_d2(1.0, 0.3j)

    def test_literal_reading_differs_off_the_real_axis(self):
        y = 1 + 3j
        good = hb.gamma0_integral_d2(y)
        literal = hb.gamma0_integral_d2(y, literal=True)
        assert abs(good - 3.0 * hb.root_select(2, y).z) < 1e-10
        assert abs(literal - good) > 1e-3

    def test_normalization(self):
        assert hb.humbert_functional_normalization(hb.HumbertParams(1.0, 2), 0.1j) < 1e-7
        assert hb.humbert_functional_normalization(hb.HumbertParams(2.0, 2), 0.05 + 0.05j) < 1e-7
        with pytest.raises(ParameterError):
            hb.humbert_functional_normalization(hb.HumbertParams(1.0, 3), 0.1j)
