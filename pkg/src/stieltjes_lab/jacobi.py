"""Jacobi and ultraspherical polynomials and the Jacobi series of ``(z - x)**-lam``.

The kernel expansion reads::

    (z - x)**-lam = sum_n c_n(z) P_n^{(gamma, beta)}(x)

    c_n(z) = G(gamma+beta+n+1) (lam)_n / G(2n+gamma+beta+1) * 2**n / (z-1)**(n+lam)
             * 2F1(n + lam, n + gamma + 1; 2n + 2 + gamma + beta; 2/(1 - z))

and converges uniformly for ``x`` in [-1, 1] once ``z`` is off the cut.
Integrating it against the beta law with the same parameters keeps only
the ``n = 0`` term, which is the closed form of the transform.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CutError, ParameterError
from .measures import BetaParams
from .special import gauss_2f1, pochhammer


@dataclass(frozen=True)
class ExpansionTruncation:
    n_max: int = 40

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ParameterError(f"n_max must be a nonnegative integer, got {self.n_max}")


@dataclass(frozen=True)
class JacobiParams:
    gamma: float
    beta: float
    n: int

    def __post_init__(self):
        if not (self.gamma > -1 and self.beta > -1):
            raise ParameterError(f"Jacobi parameters must exceed -1, got ({self.gamma}, {self.beta})")
        if int(self.n) != self.n or self.n < 0:
            raise ParameterError(f"degree must be a nonnegative integer, got {self.n}")


def jacobi_table(n_max: int, a: float, b: float, x) -> np.ndarray:
    """Values ``P_0(x) .. P_{n_max}(x)`` stacked along the first axis.

    Uses the three-term recurrence, which is stable on [-1, 1].
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    ab = a + b
    for n in range(2, n_max + 1):
        s = 2.0 * n + ab
        c1 = 2.0 * n * (n + ab) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s
        out[n] = (c2 * out[n - 1] - c3 * out[n - 2]) / c1
    return out


def _jacobi_series(n, a, b, x):
    # terminating hypergeometric sum; loses digits to cancellation for large n
    u = 0.5 * (1.0 - np.asarray(x, dtype=float))
    term = np.ones_like(u)
    total = np.ones_like(u)
    for k in range(n):
        term = term * (k - n) * (k + n + a + b + 1.0) / ((k + a + 1.0) * (k + 1.0)) * u
        total = total + term
    return pochhammer(a + 1.0, n).real / math.factorial(n) * total


def _jacobi_exact(n, a, b, x):
    # the same sum in rational arithmetic on the exact binary values of the inputs
    a, b, x = Fraction(a), Fraction(b), Fraction(x)
    u = (1 - x) / 2
    term = total = Fraction(1)
    lead = Fraction(1)
    for k in range(n):
        term = term * (k - n) * (k + n + a + b + 1) / ((k + a + 1) * (k + 1)) * u
        total += term
        lead = lead * (a + 1 + k) / (k + 1)
    return float(lead * total)


def jacobi_poly(p: JacobiParams, x, method: str = "recurrence"):
    """Jacobi polynomial ``P_n^{(gamma, beta)}(x)``.

    Parameters
    ----------
    p : JacobiParams
    x : float or array_like
    method : {"recurrence", "series", "exact"}
        ``"series"`` sums the terminating hypergeometric representation
        in floating point.  It cancels badly for ``n`` beyond about 15,
        so the recurrence is the default.  ``"exact"`` sums the same
        series in rational arithmetic (scalar ``x`` only) and serves as
        a slow oracle.
    """
    if method == "recurrence":
        val = jacobi_table(p.n, p.gamma, p.beta, x)[p.n]
    elif method == "series":
        val = _jacobi_series(p.n, p.gamma, p.beta, x)
    elif method == "exact":
        val = _jacobi_exact(p.n, p.gamma, p.beta, float(x))
    else:
        raise ParameterError(f"unknown method {method!r}")
    return float(val) if np.ndim(val) == 0 else val


def ultraspherical_poly(alpha: float, n: int, x):
    """Gegenbauer polynomial ``C_n^{(alpha)}(x)`` via the symmetric Jacobi one."""
    if not alpha > -0.5 or alpha == 0:
        raise ParameterError(f"alpha must exceed -1/2 and be nonzero, got {alpha}")
    scale = 1.0
    for j in range(n):
        scale *= (2.0 * alpha + j) / (alpha + 0.5 + j)
    return scale * jacobi_poly(JacobiParams(alpha - 0.5, alpha - 0.5, n), x)


def _log_prefactor(lam, g, b, n):
    # log of G(g+b+n+1) (lam)_n / G(2n+g+b+1); the ratio is 1 at n = 0
    if n == 0:
        return 0.0
    return (
        math.lgamma(g + b + n + 1.0)
        - math.lgamma(2.0 * n + g + b + 1.0)
        + math.lgamma(lam + n)
        - math.lgamma(lam)
    )


def kernel_expansion_coeff(lam: float, p: BetaParams, n: int, z) -> complex:
    """Coefficient of ``P_n^{(gamma, beta)}`` in the expansion of ``(z - x)**-lam``."""
    if not lam > 0:
        raise ParameterError(f"lambda must be positive, got {lam}")
    if int(n) != n or n < 0:
        raise ParameterError(f"n must be a nonnegative integer, got {n}")
    z = complex(z)
    if z.imag == 0 and z.real <= 1.0:
        raise CutError(f"z = {z} lies on the cut (-inf, 1]")
    g, b = p.gamma, p.beta
    log_mag = _log_prefactor(lam, g, b, n) + n * math.log(2.0) - (n + lam) * cmath.log(z - 1.0)
    f = gauss_2f1(n + lam, n + g + 1.0, 2.0 * n + 2.0 + g + b, 2.0 / (1.0 - z))
    return complex(cmath.exp(log_mag) * f)


def kernel_coeffs(lam: float, p: BetaParams, z, n_max: int) -> np.ndarray:
    """Coefficients ``c_0 .. c_{n_max}`` as a complex array."""
    return np.array([kernel_expansion_coeff(lam, p, n, z) for n in range(n_max + 1)])


def kernel_reconstruct(
    lam: float,
    p: BetaParams,
    z,
    x,
    t: ExpansionTruncation = ExpansionTruncation(),
):
    """Partial sum ``sum_{n <= n_max} c_n P_n(x)`` of the kernel expansion.

    ``x`` may be a scalar or an array; the result has the same shape.
    """
    c = kernel_coeffs(lam, p, z, t.n_max)
    table = jacobi_table(t.n_max, p.gamma, p.beta, x)
    val = np.tensordot(c, table, axes=(0, 0))
    return complex(val) if np.ndim(val) == 0 else val
