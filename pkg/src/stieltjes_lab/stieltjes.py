"""Generalized Stieltjes transforms ``G(lam, mu; z) = int (z - x)**(-lam) mu(dx)``.

A quadrature evaluator serves as the reference; every closed form below is
also available as a residual check against it.  All powers use the
principal branch.  Square roots that must behave like ``z`` at infinity
are built as products of principal roots (``sqrt(z - 1) * sqrt(z + 1)``),
which keeps them analytic off the real segment they are attached to.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CutError, ParameterError, SupportError
from .measures import (
    BetaParams,
    MeasureSpec,
    bernoulli_power_measure,
    beta_measure,
    integrate,
    kappa,
    kappa_convolution_density,
    mult_convolve,
)
from .quadrature import DEFAULT_POLICY, QuadraturePolicy
from .report import VerificationReport
from .special import gauss_2f1

CUT_MARGIN = 1e-6
CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"


@dataclass(frozen=True)
class GstResult:
    value: complex
    err_estimate: float
    method: str

    def __post_init__(self):
        if not self.err_estimate >= 0:
            raise ParameterError("err_estimate must be nonnegative")

    def to_dict(self, z) -> dict:
        z = complex(z)
        return {
            "z_re": z.real,
            "z_im": z.imag,
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "err": self.err_estimate,
            "method": self.method,
        }


def _segment_distance(z: complex, lo: float, hi: float) -> float:
    x = min(max(z.real, lo), hi)
    return abs(z - x)


@dataclass(frozen=True)
class EvalGrid:
    """Evaluation points kept at least ``CUT_MARGIN`` away from a real segment.

    The default segment is the cut ``(-inf, 1]`` shared by all the closed forms.
    """

    points: tuple
    cut: tuple = (-math.inf, 1.0)

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            if not (math.isfinite(p.real) and math.isfinite(p.imag)):
                raise ParameterError(f"non-finite grid point {p}")
            if _segment_distance(p, *self.cut) < CUT_MARGIN:
                raise CutError(f"grid point {p} is within {CUT_MARGIN} of the cut")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @classmethod
    def rect(cls, re_lo=-3.0, re_hi=3.0, step=0.25, ims=(0.5, 1.0, 2.0)):
        """Points ``x + i y`` for ``x`` in ``re_lo:step:re_hi`` and ``y`` in ``ims``.

        Points that fall within the margin of the cut are dropped.
        """
        n = int(round((re_hi - re_lo) / step)) if step > 0 else 0
        xs = [re_lo + i * step for i in range(n + 1)]
        pts = [complex(x, y) for y in ims for x in xs]
        pts = [p for p in pts if _segment_distance(p, -math.inf, 1.0) >= CUT_MARGIN]
        return cls(tuple(pts))

    @classmethod
    def standard(cls):
        """Re z in [-3, 3] with step 1/4 and Im z in {1/2, 1, 2}."""
        return cls.rect()

    @classmethod
    def upper_half(cls, n: int, seed: int = 0, r_min=0.5, r_max=4.0):
        """``n`` pseudo-random points in the upper half-plane with modulus in [r_min, r_max]."""
        rng = np.random.default_rng(seed)
        r = rng.uniform(r_min, r_max, n)
        th = rng.uniform(0.05 * math.pi, 0.95 * math.pi, n)
        return cls(tuple(complex(a) for a in r * np.exp(1j * th)))


def _check_lambda(lam):
    if not lam > 0:
        raise ParameterError(f"lambda must be positive, got {lam}")


def gst_quadrature(
    lam: float,
    m: MeasureSpec,
    z,
    policy: QuadraturePolicy = DEFAULT_POLICY,
) -> GstResult:
    """Reference transform by quadrature of the principal-branch kernel.

    Raises
    ------
    SupportError
        If ``z`` is within ``CUT_MARGIN`` of an atom or of the support.
    """
    _check_lambda(lam)
    z = complex(z)
    for a in m.atoms:
        if abs(z - a.location) < CUT_MARGIN:
            raise SupportError(f"z = {z} is at an atom of {m.name}")
    if m.density is not None and _segment_distance(z, *m.support) < CUT_MARGIN:
        raise SupportError(f"z = {z} is in or near the support of {m.name}")
    est = integrate(m, lambda x: np.power(z - x, -lam), policy)
    return GstResult(est.value, est.error, QUADRATURE)


def _check_off_cut(z: complex):
    if z.imag == 0 and z.real <= 1.0:
        raise CutError(f"z = {z} lies on the cut (-inf, 1]")


def gst_beta_closed(lam: float, p: BetaParams, z) -> GstResult:
    """``(z - 1)**-lam * 2F1(lam, gamma + 1; gamma + beta + 2; 2/(1 - z))``."""
    _check_lambda(lam)
    z = complex(z)
    _check_off_cut(z)
    g, b = p.gamma, p.beta
    val = (z - 1.0) ** (-lam) * gauss_2f1(lam, g + 1.0, g + b + 2.0, 2.0 / (1.0 - z))
    return GstResult(complex(val), 0.0, CLOSED_FORM)


def gst_beta_closed_alt(lam: float, p: BetaParams, z) -> GstResult:
    """``(z + 1)**-lam * 2F1(lam, beta + 1; gamma + beta + 2; 2/(1 + z))``."""
    _check_lambda(lam)
    z = complex(z)
    _check_off_cut(z)
    g, b = p.gamma, p.beta
    val = (z + 1.0) ** (-lam) * gauss_2f1(lam, b + 1.0, g + b + 2.0, 2.0 / (1.0 + z))
    return GstResult(complex(val), 0.0, CLOSED_FORM)


def _sqrt_z2m1(z: complex) -> complex:
    return cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0)


def _sqrt_zzm1(z: complex) -> complex:
    return cmath.sqrt(z) * cmath.sqrt(z - 1.0)


def _check_off_segment(z: complex, lo: float, hi: float, what: str):
    if z.imag == 0 and lo <= z.real <= hi:
        raise CutError(f"z = {z} lies on the support [{lo}, {hi}] of the {what} law")


def stieltjes_wigner(z) -> complex:
    """``2/(z + sqrt(z**2 - 1))``."""
    z = complex(z)
    _check_off_segment(z, -1.0, 1.0, "Wigner")
    return 2.0 / (z + _sqrt_z2m1(z))


def stieltjes_arcsine(z) -> complex:
    """``1/sqrt(z**2 - 1)``."""
    z = complex(z)
    _check_off_segment(z, -1.0, 1.0, "arcsine")
    return 1.0 / _sqrt_z2m1(z)


def stieltjes_bernoulli(z) -> complex:
    """``z/(z**2 - 1)``."""
    z = complex(z)
    if z == 1.0 or z == -1.0:
        raise CutError(f"z = {z} is an atom of the Bernoulli law")
    return z / (z * z - 1.0)


def stieltjes_free_poisson(z) -> complex:
    """``2/(z + sqrt(z (z - 1)))``."""
    z = complex(z)
    _check_off_segment(z, 0.0, 1.0, "free Poisson")
    return 2.0 / (z + _sqrt_zzm1(z))


def stieltjes_free_poisson_alt(z) -> complex:
    """``2 (z - sqrt((z - 1/2)**2 - 1/4)) / z``, the same function written around 1/2."""
    z = complex(z)
    _check_off_segment(z, 0.0, 1.0, "free Poisson")
    # (z - 1/2)**2 - 1/4 = z (z - 1); the branch follows z - 1/2 at infinity
    w = z - 0.5
    root = cmath.sqrt(w - 0.5) * cmath.sqrt(w + 0.5)
    return 2.0 * (z - root) / z


def examp1_closed(lam: float, z) -> complex:
    """``G_W(z)**lam``, the transform of the beta law with gamma = beta = lam - 1/2."""
    _check_lambda(lam)
    return stieltjes_wigner(z) ** lam


def examp2_closed(lam: float, z) -> complex:
    """``G_AS(z) G_W(z)**(lam - 1)``, the transform of gamma = beta = lam - 3/2.

    Requires ``lam > 1``.
    """
    if not lam > 1:
        raise ParameterError(f"this closed form needs lambda > 1, got {lam}")
    return stieltjes_arcsine(z) * stieltjes_wigner(z) ** (lam - 1.0)


def _check_k(k, least):
    if int(k) != k or k < least:
        raise ParameterError(f"k must be an integer >= {least}, got {k}")
    return int(k)


def prop1_closed(lam: float, k: int, z) -> GstResult:
    """Transform of the symmetric beta law with gamma = lam - 1/2 - k as a function of G_W.

    ``4**k G**lam / (4 - G**2)**k * 2F1(k, 1 - k; gamma + 3/2; G**2/(G**2 - 4))``
    with ``G = G_W(z)``.  The hypergeometric factor is a polynomial of
    degree ``k - 1``.
    """
    _check_lambda(lam)
    k = _check_k(k, 0)
    g = lam - 0.5 - k
    if not g > -1:
        raise ParameterError(f"gamma = lam - 1/2 - k = {g} must exceed -1")
    z = complex(z)
    _check_off_cut(z)
    gw = stieltjes_wigner(z)
    q = gw * gw
    val = 4.0**k * gw**lam / (4.0 - q) ** k
    if k > 0:
        val *= gauss_2f1(k, 1 - k, g + 1.5, q / (q - 4.0))
    return GstResult(complex(val), 0.0, CLOSED_FORM)


def prop1_arcsine_form(lam: float, k: int, z) -> complex:
    """The same transform written with G_AS: ``G_W**(lam-k) G_AS**k 2F1(k, 1-k; gamma+3/2; -G_W G_AS/4)``."""
    _check_lambda(lam)
    k = _check_k(k, 0)
    g = lam - 0.5 - k
    if not g > -1:
        raise ParameterError(f"gamma = lam - 1/2 - k = {g} must exceed -1")
    gw, ga = stieltjes_wigner(z), stieltjes_arcsine(z)
    val = gw ** (lam - k) * ga**k
    if k > 0:
        val *= gauss_2f1(k, 1 - k, g + 1.5, -gw * ga / 4.0)
    return complex(val)


def prop2_params(lam: float, k: int, swapped: bool = False) -> BetaParams:
    """Beta parameters covered by :func:`prop2_closed`."""
    hi, lo = lam - 0.5, lam - 0.5 - k
    return BetaParams(lo, hi) if swapped else BetaParams(hi, lo)


def prop2_closed(lam: float, k: int, z, swapped: bool = False) -> GstResult:
    """Transform of the beta law (lam - 1/2, lam - 1/2 - k) as a function of G_W.

    ``G**(lam - k/2) / (1 + z)**(k/2) * 2F1(1 - k, k; 2 lam - k + 1; G/(G + 2))``;
    with ``swapped`` the parameters are exchanged and the formula becomes
    ``G**(lam - k/2) / (z - 1)**(k/2) * 2F1(1 - k, k; 2 lam - k + 1; G/(G - 2))``.
    """
    _check_lambda(lam)
    k = _check_k(k, 1)
    if not lam > k - 0.5:
        raise ParameterError(f"need lambda > k - 1/2, got lambda={lam}, k={k}")
    c = 2.0 * lam - k + 1.0
    if c <= 0 and c == int(c):
        raise ParameterError(f"2 lambda - k + 1 = {c} is a nonpositive integer")
    z = complex(z)
    _check_off_cut(z)
    gw = stieltjes_wigner(z)
    if swapped:
        pre = (z - 1.0) ** (-0.5 * k)
        arg = gw / (gw - 2.0)
    else:
        pre = (z + 1.0) ** (-0.5 * k)
        arg = gw / (gw + 2.0)
    val = gw ** (lam - 0.5 * k) * pre * gauss_2f1(1 - k, k, c, arg)
    return GstResult(complex(val), 0.0, CLOSED_FORM)


def wigner_functional_residual(z) -> float:
    """``|1 + G_W**2/4 - z G_W|``."""
    z = complex(z)
    g = stieltjes_wigner(z)
    return abs(1.0 + g * g / 4.0 - z * g)


def wigner_square_residual(z, swapped: bool = False) -> float:
    """``|(1 + G_W/2)**2 - (z + 1) G_W|`` (or the ``z - 1`` variant)."""
    z = complex(z)
    g = stieltjes_wigner(z)
    if swapped:
        return abs((1.0 - g / 2.0) ** 2 - (z - 1.0) * g)
    return abs((1.0 + g / 2.0) ** 2 - (z + 1.0) * g)


def wigner_arcsine_residual(z) -> float:
    """``|1 - G_W**2/4 - G_W/G_AS|``."""
    z = complex(z)
    g = stieltjes_wigner(z)
    return abs(1.0 - g * g / 4.0 - g / stieltjes_arcsine(z))


def bernoulli_power_identity(lam: float, z, policy: QuadraturePolicy = DEFAULT_POLICY) -> float:
    """``|G(lam, mu_lam; z) - (z/(z**2 - 1))**lam|`` for the Bernoulli power measure."""
    m = bernoulli_power_measure(lam)
    lhs = gst_quadrature(lam, m, z, policy).value
    return abs(lhs - stieltjes_bernoulli(z) ** lam)


def shrinkage_closed(lam: float, p: float, z) -> complex:
    """``[(z - 1)**(p - 1) (z + 1)**(-p)]**lam``."""
    z = complex(z)
    _check_off_cut(z)
    return ((z - 1.0) ** (p - 1.0) * (z + 1.0) ** (-p)) ** lam


def _check_shrinkage(lam, p):
    _check_lambda(lam)
    if not 0 < p < 1:
        raise ParameterError(f"p must lie in (0, 1), got {p}")


def shrinkage_identity(
    lam: float, p: float, z, policy: QuadraturePolicy = DEFAULT_POLICY
) -> tuple[float, float]:
    """Residuals of the shrinkage relation.

    Returns ``(outer, inner)``: ``outer`` compares the transform of the beta
    law ``(p lam - 1, (1 - p) lam - 1)`` with the closed power, and
    ``inner`` checks that the ordinary transform of the beta law
    ``(p - 1, -p)`` is ``(z - 1)**(p - 1) (z + 1)**(-p)``.
    """
    _check_shrinkage(lam, p)
    z = complex(z)
    m = beta_measure(BetaParams(p * lam - 1.0, (1.0 - p) * lam - 1.0))
    outer = abs(gst_quadrature(lam, m, z, policy).value - shrinkage_closed(lam, p, z))
    nu = beta_measure(BetaParams(p - 1.0, -p))
    inner = abs(gst_quadrature(1.0, nu, z, policy).value - shrinkage_closed(1.0, p, z))
    return outer, inner


def shrinkage_half_residual(lam: float, z, policy: QuadraturePolicy = DEFAULT_POLICY) -> float:
    """The symmetric case p = 1/2 written with the arcsine transform.

    ``G(2)/(2**(lam-1) G(lam/2)**2) int (1 - x**2)**(lam/2 - 1) (z - x)**-lam dx``
    against ``G_AS(z)**lam``.
    """
    _check_lambda(lam)
    z = complex(z)
    const = math.exp(math.lgamma(lam) - (lam - 1.0) * math.log(2.0) - 2.0 * math.lgamma(0.5 * lam))
    e = 0.5 * lam - 1.0
    m = MeasureSpec(
        "shrinkage-half",
        density=lambda x, left, right: const * np.power(left * right, e),
        exponents=(e, e),
    )
    return abs(gst_quadrature(lam, m, z, policy).value - stieltjes_arcsine(z) ** lam)


def kappa_reduction_identity(lam: float, m: MeasureSpec, z, policy=DEFAULT_POLICY) -> float:
    """``|int (z - x)**-lam (kappa_lam * m)(dx) - z**(-lam/2) G(lam/2, m; z)|``.

    The left side uses the tensor rule of :func:`mult_convolve`.
    """
    _check_lambda(lam)
    z = complex(z)
    lo, hi = m.hull
    if lo < -1.0 or hi > 1.0:
        raise ParameterError("the reduction needs a measure supported in [-1, 1]")
    lhs = mult_convolve(kappa(lam), m)(lambda x: np.power(z - x, -lam)).value
    rhs = z ** (-0.5 * lam) * gst_quadrature(0.5 * lam, m, z, policy).value
    return abs(lhs - rhs)


def free_poisson_closed(lam: float, z) -> complex:
    """``2**lam / (z + sqrt(z (z - 1)))**lam``."""
    _check_lambda(lam)
    return stieltjes_free_poisson(z) ** lam


def free_poisson_identity(
    lam: float, z, policy: QuadraturePolicy = DEFAULT_POLICY
) -> tuple[float, float]:
    """Residuals of the product-of-betas relation with the free Poisson law.

    Returns ``(double, single)``: the left side computed by the tensor rule
    over ``kappa(lam)`` and ``kappa(lam + 1)``, and by one quadrature of
    the closed product density.
    """
    _check_lambda(lam)
    z = complex(z)
    if not (z.imag > 0 or (z.imag == 0 and z.real > 1)):
        raise ParameterError("z must lie in the upper half-plane or on (1, inf)")
    rhs = free_poisson_closed(lam, z)
    kernel = lambda x: np.power(z - x, -lam)
    double = mult_convolve(kappa(lam), kappa(lam + 1.0))(kernel).value
    single = gst_quadrature(lam, kappa_convolution_density(lam), z, policy).value
    return abs(double - rhs), abs(single - rhs)


def free_poisson_forms_residual(z) -> float:
    """Difference of the two written forms of the free Poisson transform."""
    return abs(stieltjes_free_poisson(z) - stieltjes_free_poisson_alt(z))


def nevanlinna_sign(g_nu, z) -> float:
    """``Im(sqrt(G_nu(z)) / sqrt(z))``, negative on the upper half-plane for a probability law."""
    z = complex(z)
    return (cmath.sqrt(g_nu(z)) / cmath.sqrt(z)).imag


def power_relation_check(
    lam: float,
    mu: MeasureSpec,
    nu: MeasureSpec,
    grid: Iterable,
    tolerance: float = 1e-8,
    policy: QuadraturePolicy = DEFAULT_POLICY,
) -> VerificationReport:
    """Check ``G(lam, mu; z) = G(1, nu; z)**lam`` on a grid, both sides by quadrature."""
    started = time.perf_counter()
    res = []
    for z in grid:
        lhs = gst_quadrature(lam, mu, z, policy).value
        rhs = gst_quadrature(1.0, nu, z, policy).value ** lam
        res.append(abs(lhs - rhs))
    return VerificationReport.from_residuals(
        "power-relation", f"lambda={lam:g},mu={mu.name},nu={nu.name}", res, tolerance, started
    )
