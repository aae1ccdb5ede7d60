import cmath
import math

import numpy as np
import pytest

from stieltjes_lab import measures as ms
from stieltjes_lab import stieltjes as st
from stieltjes_lab.errors import CutError, ParameterError, SupportError

GW2 = 2.0 / (2.0 + math.sqrt(3.0))


def beta(g, b):
    return ms.beta_measure(ms.BetaParams(g, b))


class TestQuadratureReference:
    def test_atoms(self):
        assert abs(st.gst_quadrature(1.0, ms.bernoulli_sym(), 2.0).value - 2.0 / 3.0) < 1e-15

    def test_uniform_log(self):
        assert abs(st.gst_quadrature(1.0, beta(0, 0), 2.0).value - 0.5 * math.log(3.0)) < 1e-14

    def test_decay(self):
        for lam in (0.5, 2.5):
            z = 1e6j
            # the first correction is lam * mean / z
            assert abs(st.gst_quadrature(lam, beta(0.3, 2.1), z).value * z**lam - 1.0) < 1e-5

    def test_support_rejected(self):
        with pytest.raises(SupportError):
            st.gst_quadrature(1.0, ms.wigner(), 0.3)
        with pytest.raises(SupportError):
            st.gst_quadrature(1.0, ms.bernoulli_sym(), 1.0 + 1e-8j)
        with pytest.raises(ParameterError):
            st.gst_quadrature(0.0, ms.wigner(), 2.0)

    def test_result_record(self):
        d = st.gst_quadrature(1.0, ms.wigner(), 2.0).to_dict(2.0)
        assert set(d) == {"z_re", "z_im", "value_re", "value_im", "err", "method"}
        assert d["method"] == st.QUADRATURE


class TestBetaClosedForms:
    def test_wigner_example(self):
        assert abs(st.gst_beta_closed(1.0, ms.BetaParams(0.5, 0.5), 2.0).value - GW2) < 1e-14

    def test_examp1_example(self):
        v = st.gst_beta_closed(2.0, ms.BetaParams(1.5, 1.5), 2.0).value
        assert abs(v - GW2**2) < 1e-14
        assert abs(v - 0.2871871) < 1e-7

    def test_two_forms_agree(self):
        p = ms.BetaParams(0.3, 2.1)
        z = 2.0 + 1.0j
        assert abs(st.gst_beta_closed(1.7, p, z).value - st.gst_beta_closed_alt(1.7, p, z).value) < 1e-10

    @pytest.mark.parametrize("lam", [0.5, 1.5, 3.5])
    @pytest.mark.parametrize("g, b", [(0.0, 0.0), (-0.5, -0.5), (1.5, 0.5)])
    def test_against_quadrature(self, lam, g, b):
        p = ms.BetaParams(g, b)
        m = ms.beta_measure(p)
        for z in (-2.5 + 0.5j, 0.25 + 1.0j, 3.0 + 2.0j, 1.5):
            q = st.gst_quadrature(lam, m, z).value
            assert abs(st.gst_beta_closed(lam, p, z).value - q) < 1e-8
            assert abs(st.gst_beta_closed_alt(lam, p, z).value - q) < 1e-8

    def test_decay_along_imaginary_axis(self):
        z = 1e6j
        for f in (st.gst_beta_closed, st.gst_beta_closed_alt):
            assert abs(f(2.5, ms.BetaParams(0.3, 2.1), z).value * z**2.5 - 1.0) < 1e-5

    def test_cut_rejected(self):
        with pytest.raises(CutError):
            st.gst_beta_closed(1.0, ms.BetaParams(0, 0), -2.0)


class TestOrdinaryTransforms:
    def test_values(self):
        assert abs(st.stieltjes_wigner(2.0) - 0.5358984) < 1e-7
        assert st.stieltjes_bernoulli(2.0) == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert abs(st.stieltjes_free_poisson(2.0) - 2.0 / (2.0 + math.sqrt(2.0))) < 1e-15

    def test_branches_follow_z(self):
        for z in (-3.0, -0.5 + 1e-3j, 0.5 - 1e-3j, 5j, -5j):
            assert (st.stieltjes_wigner(z) * z).real > 0
            assert (st.stieltjes_arcsine(z) * z).real > 0

    def test_free_poisson_forms(self):
        assert st.free_poisson_forms_residual(2.0 + 3.0j) < 1e-13

    def test_functional_relations(self):
        assert st.wigner_functional_residual(3.0 + 2.0j) < 1e-13
        assert st.wigner_square_residual(2.0 + 1.0j) < 1e-13
        assert st.wigner_square_residual(2.0 + 1.0j, swapped=True) < 1e-13
        assert st.wigner_arcsine_residual(0.3 + 0.4j) < 1e-13


class TestWignerParametrizedFamilies:
    def test_prop1_reductions(self):
        z = 0.4 + 0.9j
        for lam in (0.5, 2.0, 3.7):
            assert abs(st.prop1_closed(lam, 0, z).value - st.stieltjes_wigner(z) ** lam) < 1e-15
        for lam in (1.5, 3.0):
            assert abs(st.prop1_closed(lam, 1, z).value - st.examp2_closed(lam, z)) < 1e-12

    def test_prop1_example(self):
        q = st.gst_quadrature(3.0, beta(0.5, 0.5), 2.5).value
        assert abs(st.prop1_closed(3.0, 2, 2.5).value - q) < 1e-9

    def test_prop1_arcsine_form(self):
        for lam, k in ((3.0, 2), (4.2, 3), (1.7, 1)):
            for z in (2.5 + 0.5j, -1.0 + 0.3j):
                assert abs(st.prop1_closed(lam, k, z).value - st.prop1_arcsine_form(lam, k, z)) < 1e-12

    def test_prop1_preconditions(self):
        with pytest.raises(ParameterError):
            st.prop1_closed(1.0, 2, 2.0)
        with pytest.raises(ParameterError):
            st.prop1_closed(2.0, 1.5, 2.0)

    def test_prop2_parameters(self):
        assert st.prop2_params(2.0, 1) == ms.BetaParams(1.5, 0.5)
        assert st.prop2_params(2.0, 1, swapped=True) == ms.BetaParams(0.5, 1.5)

    def test_prop2_example(self):
        q = st.gst_quadrature(2.0, beta(1.5, 0.5), 2.0).value
        assert abs(st.prop2_closed(2.0, 1, 2.0).value - q) < 1e-9

    @pytest.mark.parametrize("swapped", [False, True])
    def test_prop2_orientations(self, swapped):
        for k, lam in ((2, 2.5), (3, 3.0), (3, 5.0)):
            m = ms.beta_measure(st.prop2_params(lam, k, swapped))
            for z in (-2.0 + 0.5j, 0.5 + 1.0j, 2.0 + 2.0j):
                q = st.gst_quadrature(lam, m, z).value
                assert abs(st.prop2_closed(lam, k, z, swapped).value - q) < 1e-8

    def test_prop2_preconditions(self):
        with pytest.raises(ParameterError):
            st.prop2_closed(1.0, 2, 2.0)
        with pytest.raises(ParameterError):
            st.prop2_closed(2.0, 0, 2.0)

    def test_examp2_requires_lambda_above_one(self):
        with pytest.raises(ParameterError):
            st.examp2_closed(1.0, 2.0)


class TestBernoulliShrinkage:
    def test_bernoulli_power_examples(self):
        assert st.bernoulli_power_identity(1.0, 2.0) < 1e-15
        assert st.bernoulli_power_identity(2.0, 2.0 + 1.0j) < 1e-8
        assert st.bernoulli_power_identity(3.5, 1.5) < 1e-8

    def test_shrinkage_uniform_case(self):
        z = 2.0 + 0.5j
        q = st.gst_quadrature(2.0, beta(0.0, 0.0), z).value
        assert abs(q - 1.0 / (z * z - 1.0)) < 1e-14
        assert abs(st.shrinkage_closed(2.0, 0.5, z) - 1.0 / (z * z - 1.0)) < 1e-14

    def test_shrinkage_examples(self):
        assert st.shrinkage_half_residual(3.0, 2.0) < 1e-9
        assert max(st.shrinkage_identity(4.0, 0.3, 1.2 + 0.7j)) < 1e-9

    def test_shrinkage_rejects_p(self):
        with pytest.raises(ParameterError):
            st.shrinkage_identity(2.0, 1.0, 2.0)


class TestFreePoisson:
    def test_examples(self):
        assert abs(st.free_poisson_closed(1.0, 2.0) - 0.5857864) < 1e-7
        assert max(st.free_poisson_identity(1.0, 2.0)) < 1e-7
        assert max(st.free_poisson_identity(2.0, 1.5 + 1.0j)) < 1e-7

    def test_kappa_reduction_examples(self):
        assert st.kappa_reduction_identity(2.0, beta(0.0, 0.0), 3.0) < 1e-7
        assert st.kappa_reduction_identity(1.0, ms.wigner(), 2.0) < 1e-7

    def test_nevanlinna_sign(self):
        for z in st.EvalGrid.upper_half(50, seed=1, r_min=0.05, r_max=20.0):
            for g in (st.stieltjes_wigner, st.stieltjes_bernoulli, st.stieltjes_free_poisson):
                assert st.nevanlinna_sign(g, z) < 0


class TestPowerRelation:
    def test_examp1(self):
        grid = st.EvalGrid.rect(-2.0, 2.0, 1.0, (0.5, 2.0))
        rep = st.power_relation_check(2.5, beta(2.0, 2.0), ms.wigner(), grid)
        assert rep.passed and rep.grid_size == len(grid)

    def test_bernoulli_power(self):
        grid = st.EvalGrid.rect(-2.0, 2.0, 1.0, (0.5, 2.0))
        rep = st.power_relation_check(2.0, ms.bernoulli_power_measure(2.0), ms.bernoulli_sym(), grid)
        assert rep.passed

    def test_lambda_one_is_trivial(self):
        rep = st.power_relation_check(1.0, ms.arcsine(), ms.arcsine(), [2j, 3.0])
        assert rep.max_residual == 0.0


class TestEvalGrid:
    def test_standard_size(self):
        assert len(st.EvalGrid.standard()) == 75

    def test_margin(self):
        with pytest.raises(CutError):
            st.EvalGrid((0.5 + 1e-9j,))
        assert len(st.EvalGrid.rect(-1.0, 2.0, 1.0, (0.0,))) == 1
