"""Humbert polynomials and the trinomial root behind their first functional.

The Humbert polynomials have generating series
``(1 - (d+1) x z + z**(d+1))**-alpha``.  Integrating against the first
d-orthogonality functional ``Gamma_0`` gives

    int (y - x)**-alpha Gamma_0(dx) = [(d+1) z(y)]**alpha

where ``z(y)`` is the root of ``z**(d+1) - (d+1) y z + 1 = 0`` that tends to
0 as ``y`` grows.  This module finds that root by polynomial root finding and
by hypergeometric series, and checks the ``d = 2`` integral identity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, CutError, ParameterError, SectorError, ZeroError
from .quadrature import DEFAULT_POLICY, QuadraturePolicy, tanh_sinh
from .special import gauss_2f1, hyper_pfq, ln_gamma

# past this modulus the asymptotic root 1/((d+1) y) is isolated from the others
_FAR = 10.0
_RAY_FACTOR = 0.8


@dataclass(frozen=True)
class HumbertParams:
    alpha: float
    d: int

    def __post_init__(self):
        if not self.alpha > -0.5 or self.alpha == 0:
            raise ParameterError(f"alpha must exceed -1/2 and be nonzero, got {self.alpha}")
        if int(self.d) != self.d or self.d < 1:
            raise ParameterError(f"d must be a positive integer, got {self.d}")


@dataclass(frozen=True)
class TrinomialRoot:
    y: complex
    z: complex
    residual: float


def humbert_coeffs(p: HumbertParams, x: float, n_max: int) -> np.ndarray:
    """Taylor coefficients ``H_0(x) .. H_{n_max}(x)`` of the generating series.

    With ``B(z) = 1 - (d+1) x z + z**(d+1)`` the relation ``B F' = -alpha B' F``
    gives ``n H_n = -sum_j b_j ((n - j) + alpha j) H_{n-j}`` over the two
    nonzero coefficients ``b_1`` and ``b_{d+1}``.
    """
    if int(n_max) != n_max or n_max < 0:
        raise ParameterError("n_max must be a nonnegative integer")
    a, d = p.alpha, p.d
    b = {1: -(d + 1) * x, d + 1: 1.0} if d > 0 else {}
    h = np.zeros(n_max + 1)
    h[0] = 1.0
    for n in range(1, n_max + 1):
        acc = 0.0
        for j, bj in b.items():
            if j <= n:
                acc += bj * ((n - j) + a * j) * h[n - j]
        h[n] = -acc / n
    return h


def f_map(d: int, z) -> complex:
    """``(1 + z**(d+1)) / ((d+1) z)``."""
    z = complex(z)
    if z == 0:
        raise ZeroError("f_map has a pole at z = 0")
    return (1.0 + z ** (d + 1)) / ((d + 1) * z)


def trinomial_residual(d: int, y, z) -> float:
    return abs(z ** (d + 1) - (d + 1) * y * z + 1.0)


def _polish(d, y, z):
    for _ in range(2):
        dp = (d + 1) * (z**d - y)
        if dp == 0:
            break
        z = z - (z ** (d + 1) - (d + 1) * y * z + 1.0) / dp
    return z


def _roots(d, y):
    coeffs = np.zeros(d + 2, dtype=complex)
    coeffs[0] = 1.0
    coeffs[d] = -(d + 1) * y
    coeffs[d + 1] = 1.0
    return np.roots(coeffs)


def _nearest(roots, target, scale):
    dist = np.abs(roots - target)
    order = np.argsort(dist)
    if len(order) > 1 and dist[order[1]] - dist[order[0]] < 1e-6 * scale:
        raise BranchError(f"two roots are equally close to {target}; y is near a branch point")
    return roots[order[0]]


def branch_points(d: int) -> np.ndarray:
    """Values of ``y`` where two roots of the trinomial coalesce."""
    k = np.arange(d + 1)
    zs = d ** (-1.0 / (d + 1)) * np.exp(2j * np.pi * k / (d + 1))
    return zs**d


def root_select(d: int, y) -> TrinomialRoot:
    """Root of ``z**(d+1) - (d+1) y z + 1`` continuing ``1/((d+1) y)`` from infinity.

    For ``|y| >= 10`` the root nearest the asymptotic value is taken
    directly.  Closer in, the root is followed along the ray from
    ``10 y/|y|`` down to ``y``.  Each step uses companion-matrix roots
    polished by Newton's method.

    Raises
    ------
    BranchError
        When ``y`` is near a coalescence of two roots.
    """
    if int(d) != d or d < 1:
        raise ParameterError(f"d must be a positive integer, got {d}")
    y = complex(y)
    if y == 0:
        raise ParameterError("y must be nonzero")
    if np.min(np.abs(branch_points(d) - y)) < 1e-6:
        raise BranchError(f"y = {y} is at a branch point of the degree-{d + 1} trinomial")
    r = abs(y)
    if r >= _FAR:
        path = [y]
    else:
        n = int(math.ceil(math.log(_FAR / r) / -math.log(_RAY_FACTOR)))
        path = [y * (_FAR / r) * _RAY_FACTOR**i for i in range(n)] + [y]
    z = 1.0 / ((d + 1) * path[0])
    for yy in path:
        roots = np.array([_polish(d, yy, complex(w)) for w in _roots(d, yy)])
        z = complex(_nearest(roots, z, max(abs(z), 1e-300)))
    return TrinomialRoot(y, z, trinomial_residual(d, y, z))


def root_via_2f1_d2(y, check: bool = True, tol: float = 1e-8) -> complex:
    """``(1/(3y)) 2F1(1/3, 2/3; 3/2; 1/(4 y**3))`` for the cubic ``z**3 - 3 y z + 1``.

    Raises
    ------
    ParameterError
        If ``|1/(4 y**3)| >= 1``.
    SectorError
        If ``check`` is set and the value differs from :func:`root_select`
        by more than ``tol``.
    """
    y = complex(y)
    if y == 0:
        raise ParameterError("y must be nonzero")
    w = 1.0 / (4.0 * y**3)
    if not abs(w) < 1.0:
        raise ParameterError(f"need |1/(4 y^3)| < 1, got {abs(w):.3g}")
    z = gauss_2f1(1.0 / 3.0, 2.0 / 3.0, 1.5, w) / (3.0 * y)
    if check:
        ref = root_select(2, y).z
        if abs(z - ref) > tol:
            raise SectorError(f"hypergeometric root {z} differs from {ref} at y = {y}")
    return complex(z)


def series_root_params(d: int, literal: bool = False):
    """Upper and lower parameters and argument factor of the general-d root series.

    Returns ``(upper, lower, sign)``; the series argument is
    ``sign / (d**d y**(d+1))``.  ``literal`` uses the sign ``(-1)**d``.
    """
    if d < 2:
        raise ParameterError("the series form needs d >= 2; use root_select for d = 1")
    upper = [i / (d + 1) for i in range(1, d + 1)]
    lower = [(i + 1) / d for i in range(1, d + 1) if i != d - 1]
    sign = (-1.0) ** d if literal else 1.0
    return upper, lower, sign


def root_via_series(d: int, y, literal: bool = False) -> complex:
    """Small root as ``(1/((d+1) y)) dF_{d-1}(...; 1/(d**d y**(d+1)))``.

    ``d = 1`` uses ``(1/(2y)) 2F1(1/2, 1; 2; 1/y**2)``.  With ``literal``
    the argument carries the factor ``(-1)**d``.  For odd ``d`` that
    version disagrees with the true root.
    """
    y = complex(y)
    if y == 0:
        raise ParameterError("y must be nonzero")
    if d == 1:
        w = 1.0 / (y * y)
        if w.imag == 0 and w.real >= 1:
            raise CutError("1/y^2 on the cut [1, inf)")
        return complex(gauss_2f1(0.5, 1.0, 2.0, w) / (2.0 * y))
    upper, lower, sign = series_root_params(d, literal)
    w = sign / (d**d * y ** (d + 1))
    return complex(hyper_pfq(upper, lower, w) / ((d + 1) * y))


def series_root_mismatch(d: int, y, literal: bool = False) -> float:
    """``|root_via_series - root_select|``."""
    return abs(root_via_series(d, y, literal) - root_select(d, y).z)


_GAMMA0_CONST = cmath.exp(ln_gamma(1.5) - ln_gamma(2.0 / 3.0) - ln_gamma(5.0 / 6.0)).real


def gamma0_integral_d2(y, literal: bool = False, policy: QuadraturePolicy = DEFAULT_POLICY) -> complex:
    """Euler-integral value of ``3 z(y)`` for ``d = 2``.

    Computes ``(1/y) C int_0^1 (1 - x/(4y^3))**(-1/3) x**(-1/3) (1-x)**(-1/6) dx``
    with ``C = G(3/2)/(G(2/3) G(5/6))``.  ``literal`` evaluates the
    alternative reading ``4**(1/3) C int_0^1 (y**3 - x)**(-1/3) ... dx``,
    which is kept for comparison only.
    """
    y = complex(y)
    if y == 0:
        raise ParameterError("y must be nonzero")
    if literal:
        y3 = y**3
        g = lambda x, l, r: np.power(y3 - x, -1.0 / 3.0) * l ** (-1.0 / 3.0) * r ** (-1.0 / 6.0)
        est = tanh_sinh(g, 0.0, 1.0, (-1.0 / 3.0, -1.0 / 6.0), policy)
        return 4.0 ** (1.0 / 3.0) * _GAMMA0_CONST * est.value
    w = 1.0 / (4.0 * y**3)
    if w.imag == 0 and w.real >= 1:
        raise CutError("1/(4 y^3) on the cut [1, inf)")
    g = lambda x, l, r: np.power(1.0 - w * x, -1.0 / 3.0) * l ** (-1.0 / 3.0) * r ** (-1.0 / 6.0)
    est = tanh_sinh(g, 0.0, 1.0, (-1.0 / 3.0, -1.0 / 6.0), policy)
    return _GAMMA0_CONST * est.value / y


def gamma0_gst_identity_d2(alpha: float, y, policy: QuadraturePolicy = DEFAULT_POLICY) -> float:
    """``|{Euler integral}**alpha - [3 z(y)]**alpha|`` for ``d = 2``.

    Both sides equal the ``alpha``-transform of ``Gamma_0`` at ``y``.
    """
    y = complex(y)
    if not y.imag > 0:
        raise ParameterError("y must lie in the upper half-plane")
    if not abs(4.0 * y**3) > 1.0:
        raise ParameterError("need |4 y^3| > 1")
    if alpha == 0:
        return 0.0
    lhs = gamma0_integral_d2(y, policy=policy) ** alpha
    rhs = (3.0 * root_select(2, y).z) ** alpha
    return abs(lhs - rhs)


def humbert_functional_normalization(p: HumbertParams, z, policy: QuadraturePolicy = DEFAULT_POLICY) -> float:
    """Residual of ``[(d+1) z]**alpha * {transform at y = f(z)}**-alpha = 1`` for ``d = 2``.

    ``z`` must be the small root over ``y = f(z)``, so ``|z|`` has to be
    small.
    """
    if p.d != 2:
        raise ParameterError("only d = 2 is realized through an integral identity")
    z = complex(z)
    y = f_map(2, z)
    if not abs(4.0 * y**3) > 1.0:
        raise ParameterError("z is too large: need |4 f(z)^3| > 1")
    if abs(root_select(2, y).z - z) > 1e-8 * max(1.0, abs(z)):
        raise ParameterError(f"z = {z} is not the small root over y = f(z)")
    q = gamma0_integral_d2(y, policy=policy)
    return abs((3.0 * z) ** p.alpha * q ** (-p.alpha) - 1.0)
