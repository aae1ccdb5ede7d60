"""Double-exponential (tanh-sinh) quadrature on finite intervals.

The integrand is called as ``g(x, left, right)`` where ``left = x - lo`` and
``right = hi - x`` are computed without cancellation, so that endpoint
factors such as ``(1 - x)**gamma`` stay accurate when ``x`` rounds to an
endpoint.  All callables must accept and return numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import ParameterError, QuadratureError

_HALF_PI = 0.5 * math.pi
# exp(-2u) underflow guard for the distance to an endpoint
_U_CAP = 340.0


@dataclass(frozen=True)
class QuadraturePolicy:
    """Budget and tolerance for one (per-interval) tanh-sinh integration."""

    abscissae_budget: int = 2000
    levels: int = 12
    rel_tol: float = 1e-11

    def __post_init__(self):
        if self.abscissae_budget < 16:
            raise ParameterError("abscissae_budget must be >= 16")
        if self.levels < 1:
            raise ParameterError("levels must be >= 1")
        if not self.rel_tol > 0:
            raise ParameterError("rel_tol must be > 0")


DEFAULT_POLICY = QuadraturePolicy()


class Estimate(NamedTuple):
    value: complex
    error: float


def truncation_point(exponents=(0.0, 0.0)) -> float:
    """Half-width in the ``t`` variable beyond which the tails are negligible.

    ``exponents`` are the real parts of the algebraic endpoint behaviour
    ``(x - lo)**e_lo`` and ``(hi - x)**e_hi``; values at or below -1 are
    rejected because the integral would diverge.
    """
    e = min(0.0, *(float(np.real(v)) for v in exponents))
    if e <= -1.0:
        raise ParameterError(f"endpoint exponent {e} makes the integral divergent")
    u = min(_U_CAP, 21.0 / (1.0 + e))
    return math.asinh(u / _HALF_PI)


def rule(lo: float, hi: float, h: float, t_max: float):
    """Nodes of the tanh-sinh rule with step ``h`` on ``[lo, hi]``.

    Returns ``(x, left, right, w)`` as float arrays; ``w`` already includes
    the step and the Jacobian, so ``sum(w * g)`` approximates the integral.
    """
    n = int(math.ceil(t_max / h))
    t = h * np.arange(-n, n + 1, dtype=float)
    return _nodes(lo, hi, t, h)


def _nodes(lo, hi, t, h):
    span = hi - lo
    u = _HALF_PI * np.sinh(t)
    e = np.exp(-2.0 * np.abs(u))
    small = span * e / (1.0 + e)
    big = span - small
    neg = u < 0
    left = np.where(neg, small, big)
    right = np.where(neg, big, small)
    x = np.where(neg, lo + left, hi - right)
    w = h * 0.5 * span * _HALF_PI * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    keep = (left > 0) & (right > 0) & (w > 0)
    return x[keep], left[keep], right[keep], w[keep]


def tanh_sinh(
    g: Callable,
    lo: float,
    hi: float,
    exponents=(0.0, 0.0),
    policy: QuadraturePolicy = DEFAULT_POLICY,
    scale: float | None = None,
) -> Estimate:
    """Integrate ``g(x, left, right)`` over ``[lo, hi]``.

    The step is halved from 1/2 until two successive sums agree to
    ``policy.rel_tol`` relative to ``scale`` (default: the integral of
    ``|g|``).  The returned error is the last difference, which overstates
    the true error of the final sum by many digits once the rule is in its
    double-exponential regime.

    Raises
    ------
    QuadratureError
        When the abscissae budget or level cap is exhausted first.
    """
    if not hi > lo:
        raise ParameterError("need lo < hi")
    t_max = truncation_point(exponents)
    h = 0.5
    n = int(math.ceil(t_max / h))
    t = h * np.arange(-n, n + 1, dtype=float)
    x, left, right, w = _nodes(lo, hi, t, h)
    vals = np.asarray(g(x, left, right), dtype=complex)
    total = complex(np.sum(w * vals))
    mag = float(np.sum(w * np.abs(vals)))
    used = t.size
    prev = None
    for level in range(1, policy.levels + 1):
        h *= 0.5
        n = int(math.ceil(t_max / h))
        odd = h * np.arange(-n + (1 - n % 2), n + 1, 2, dtype=float)
        if used + odd.size > policy.abscissae_budget:
            break
        x, left, right, w = _nodes(lo, hi, odd, h)
        vals = np.asarray(g(x, left, right), dtype=complex)
        prev = total
        total = 0.5 * total + complex(np.sum(w * vals))
        mag = 0.5 * mag + float(np.sum(w * np.abs(vals)))
        used += odd.size
        if not np.isfinite(total):
            raise QuadratureError("non-finite integrand value")
        ref = mag if scale is None else scale
        diff = abs(total - prev)
        if level >= 2 and diff <= policy.rel_tol * max(ref, 1e-300):
            return Estimate(total, diff)
    raise QuadratureError(
        f"tanh-sinh did not converge within {used} abscissae "
        f"(last difference {abs(total - prev) if prev is not None else float('nan'):.3e})"
    )
