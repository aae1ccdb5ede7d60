"""Randomized identities checked with hypothesis."""

import cmath
import math

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as hst

from stieltjes_lab import humbert as hb
from stieltjes_lab import measures as ms
from stieltjes_lab import special as sf
from stieltjes_lab import stieltjes as st

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

params = hst.floats(-3.0, 3.0, allow_nan=False)
positive = hst.floats(0.2, 3.0, allow_nan=False)


@hst.composite
def cut_plane(draw, r_max=3.0):
    r = draw(hst.floats(0.0, r_max))
    th = draw(hst.floats(-math.pi, math.pi))
    z = r * cmath.exp(1j * th)
    assume(not (z.real >= 1.0 and abs(z.imag) < 0.05))
    return z


@hst.composite
def upper_half(draw):
    r = draw(hst.floats(0.5, 4.0))
    th = draw(hst.floats(0.05 * math.pi, 0.95 * math.pi))
    return r * cmath.exp(1j * th)


class TestHypergeometric:
    @FAST
    @given(params, params, hst.floats(0.3, 3.0), cut_plane())
    def test_symmetry_and_conjugation(self, a, b, c, z):
        f = sf.gauss_2f1(a, b, c, z)
        assert sf.gauss_2f1(b, a, c, z) == f
        g = sf.gauss_2f1(a, b, c, z.conjugate())
        assert abs(g - f.conjugate()) <= 1e-12 * (1.0 + abs(f))

    @FAST
    @given(params, positive, cut_plane())
    def test_euler_agreement(self, a, b, z):
        c = b + 1.3
        f = sf.gauss_2f1(a, b, c, z)
        assert abs(f - sf.euler_2f1_oracle(a, b, c, z)) <= 1e-10 * (1.0 + abs(f))

    @FAST
    @given(hst.floats(-2, 2), hst.floats(-2, 2), hst.floats(0.3, 3.0), cut_plane(1.5))
    def test_linear_transformation(self, a, d, c, u):
        r = sf.transform_linear(a, d, c, u)
        assert r.residual <= 1e-11 * (1.0 + abs(r.rhs))

    @FAST
    @given(hst.floats(0.6, 4.0), cut_plane())
    def test_closed_identity(self, a, u):
        assert abs(sf.closed_id2(a, u) - sf.gauss_2f1(a, a + 0.5, 2 * a, u)) <= 1e-11 * (1.0 + abs(sf.closed_id2(a, u)))


class TestTransforms:
    @FAST
    @given(hst.floats(0.3, 4.0), hst.floats(-0.9, 2.5), hst.floats(-0.9, 2.5), upper_half())
    def test_two_closed_forms_agree(self, lam, g, b, z):
        p = ms.BetaParams(g, b)
        v1 = st.gst_beta_closed(lam, p, z).value
        v2 = st.gst_beta_closed_alt(lam, p, z).value
        assert abs(v1 - v2) <= 1e-10 * (1.0 + abs(v1))

    @settings(max_examples=25, deadline=None)
    @given(hst.floats(0.3, 4.0), hst.floats(-0.9, 2.5), hst.floats(-0.9, 2.5), upper_half())
    def test_closed_form_vs_quadrature(self, lam, g, b, z):
        p = ms.BetaParams(g, b)
        q = st.gst_quadrature(lam, ms.beta_measure(p), z).value
        assert abs(st.gst_beta_closed(lam, p, z).value - q) <= 1e-8 * (1.0 + abs(q))

    @FAST
    @given(hst.floats(0.3, 5.0), hst.integers(0, 3), upper_half())
    def test_prop1_forms_agree(self, lam, k, z):
        assume(lam - 0.5 - k > -1)
        a = st.prop1_closed(lam, k, z).value
        assert abs(a - st.prop1_arcsine_form(lam, k, z)) <= 1e-11 * (1.0 + abs(a))

    @FAST
    @given(upper_half())
    def test_wigner_relations(self, z):
        assert st.wigner_functional_residual(z) < 1e-12
        assert st.wigner_arcsine_residual(z) < 1e-12
        assert st.free_poisson_forms_residual(z) < 1e-12
        for g in (st.stieltjes_wigner, st.stieltjes_bernoulli, st.stieltjes_free_poisson):
            assert st.nevanlinna_sign(g, z) < 0


class TestHumbert:
    @FAST
    @given(hst.integers(1, 4), hst.floats(2.0, 30.0), hst.floats(0.02, math.pi - 0.02))
    def test_root_residual_and_inverse(self, d, r, th):
        y = r * cmath.exp(1j * th)
        root = hb.root_select(d, y)
        assert root.residual < 1e-10
        assert abs(hb.f_map(d, root.z) - y) < 1e-10 * abs(y)

    @FAST
    @given(hst.integers(1, 3), hst.floats(0.1, 3.0), hst.floats(-0.9, 0.9), hst.floats(-math.pi, math.pi))
    def test_generating_series(self, d, alpha, x, th):
        z = 0.1 * cmath.exp(1j * th)
        h = hb.humbert_coeffs(hb.HumbertParams(alpha, d), x, 60)
        exact = (1 - (d + 1) * x * z + z ** (d + 1)) ** (-alpha)
        assert abs(np.polyval(h[::-1], z) - exact) < 1e-10
