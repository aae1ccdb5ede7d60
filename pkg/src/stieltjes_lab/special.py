"""Gamma, Pochhammer and hypergeometric functions of complex arguments.

``gauss_2f1`` continues the Gauss series to the plane cut along
``[1, inf)``.  It maps the argument with the six classical
transformations, picks the mapped argument of smallest modulus, and checks
every candidate for cancellation before accepting it.  Arguments where no
map lands inside the disc of radius ``R0`` (the neighbourhood of
``exp(+-i pi/3)``), or where every map cancels badly, are handled by
Taylor continuation of the hypergeometric ODE or by the Euler integral.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, CutError, ParameterError, PoleError, QuadratureError
from .quadrature import QuadraturePolicy, tanh_sinh

# Direct-series radius; every accepted mapped argument has modulus <= R0.
R0 = 0.8
# A connection formula is rejected if its terms exceed the result by this factor.
_MAX_LOSS = 100.0
# Extra weight on connection formulas for the rounding of their gamma prefactors.
_GAMMA_PENALTY = 20.0
# Distance to an integer below which a gamma-function pair is treated as degenerate.
_DEGENERATE = 1e-12
_NEAR_DEGENERATE = 2e-2

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_LN_PI = math.log(math.pi)


@dataclass(frozen=True)
class SeriesPolicy:
    rel_tol: float = 1e-14
    abs_tol: float = 1e-300
    max_terms: int = 10_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ParameterError("rel_tol must be > 0")
        if self.max_terms < 1:
            raise ParameterError("max_terms must be >= 1")


DEFAULT_SERIES = SeriesPolicy()


@dataclass(frozen=True)
class IdentityResidual:
    """Both sides of an identity evaluated at one point, and their gap."""

    lhs: complex
    rhs: complex
    residual: float

    @classmethod
    def of(cls, lhs, rhs) -> "IdentityResidual":
        lhs, rhs = complex(lhs), complex(rhs)
        return cls(lhs, rhs, abs(lhs - rhs))

    @property
    def relative(self) -> float:
        return self.residual / max(abs(self.rhs), 1e-300)


def _nonpos_int(z: complex) -> int | None:
    """Return ``n >= 0`` when ``z == -n``, else ``None``."""
    z = complex(z)
    if z.imag != 0.0:
        return None
    r = round(z.real)
    if r <= 0 and abs(z.real - r) <= 1e-13 * max(1.0, abs(r)):
        return int(-r)
    return None


def _int_distance(z: complex) -> tuple[int, float]:
    z = complex(z)
    r = round(z.real)
    return int(r), abs(complex(z.real - r, z.imag))


# ---------------------------------------------------------------------------
# gamma family


def ln_gamma(z) -> complex:
    """Logarithm of the gamma function.

    ``exp(ln_gamma(z)) == gamma(z)``; the imaginary part is some
    determination of ``arg gamma(z)`` (zero for real ``z > 0``).  Lanczos
    approximation (g = 7, 9 terms) with reflection for ``Re z < 1/2``.
    """
    z = complex(z)
    if _nonpos_int(z) is not None:
        raise PoleError(f"gamma has a pole at {z}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return _LN_PI - cmath.log(cmath.sin(math.pi * z)) - ln_gamma(1.0 - z)
    z -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    out = _LN_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)
    if z.imag == 0.0:
        return complex(out.real, 0.0)
    return out


def gamma(z) -> complex:
    z = complex(z)
    if z.imag == 0.0 and z.real < 0.5 and _nonpos_int(z) is None:
        # keep the sign for negative real arguments
        return math.pi / (cmath.sin(math.pi * z) * gamma(1.0 - z))
    return cmath.exp(ln_gamma(z))


def rgamma(z) -> complex:
    """``1 / gamma(z)``, entire: zero at the poles of gamma."""
    z = complex(z)
    if _nonpos_int(z) is not None:
        return 0j
    if z.imag == 0.0 and z.real < 0.5:
        return 1.0 / gamma(z)
    return cmath.exp(-ln_gamma(z))


def digamma(z) -> complex:
    z = complex(z)
    if _nonpos_int(z) is not None:
        raise PoleError(f"digamma has a pole at {z}")
    if z.real < 0.5:
        return digamma(1.0 - z) - math.pi / cmath.tan(math.pi * z)
    acc = 0j
    while abs(z) < 12.0:
        acc -= 1.0 / z
        z += 1.0
    w = 1.0 / (z * z)
    tail = w * (
        -1.0 / 12
        + w * (1.0 / 120 + w * (-1.0 / 252 + w * (1.0 / 240 + w * (-1.0 / 132 + w * (691.0 / 32760 - w / 12)))))
    )
    return acc + cmath.log(z) - 0.5 / z + tail


def pochhammer(z, k: int) -> complex:
    """Rising factorial ``z (z+1) ... (z+k-1)``; ``(z)_0 = 1``."""
    if k < 0:
        raise ParameterError("k must be nonnegative")
    z = complex(z)
    out = 1.0 + 0j
    for i in range(k):
        out *= z + i
    return out


# ---------------------------------------------------------------------------
# series kernels


def _series(a, b, c, z, policy=DEFAULT_SERIES):
    """Partial sums of 2F1; returns ``(sum, max |term|)``."""
    term = 1.0 + 0j
    total = 1.0 + 0j
    big = 1.0
    quiet = 0
    for k in range(policy.max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        at = abs(term)
        big = max(big, at)
        if at == 0.0:
            return total, big
        if at <= policy.rel_tol * abs(total) + policy.abs_tol:
            quiet += 1
            if quiet >= 3:
                return total, big
        else:
            quiet = 0
    raise ConvergenceError(f"2F1 series did not converge in {policy.max_terms} terms (z={z})")


def _poly(n, b, c, z):
    """Terminating 2F1(-n, b; c; z); returns ``(sum, max |term|)``."""
    term = 1.0 + 0j
    total = 1.0 + 0j
    big = 1.0
    for k in range(n):
        term *= (k - n) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        big = max(big, abs(term))
    return total, big


# ---------------------------------------------------------------------------
# transformations; each returns (value, loss) where loss bounds cancellation


def _direct(a, b, c, z, s, policy):
    val, big = _series(a, b, c, z, policy)
    return val, big / max(abs(val), 1e-300)


def _pfaff(a, b, c, z, s, policy):
    # 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
    val, big = _series(a, c - b, c, -z / s, policy)
    return s ** (-a) * val, big / max(abs(val), 1e-300)


def _one_minus(a, b, c, z, s, policy):
    """Expansion about z = 1 in powers of s = 1 - z."""
    m, dist = _int_distance(c - a - b)
    if dist <= _DEGENERATE:
        if m < 0:
            # Euler: (1-z)^(c-a-b) 2F1(c-a, c-b; c; z)
            val, loss = _hyp2f1_inner(c - a, c - b, c, z, s, policy)
            return s ** (-(-m)) * val, loss
        return _one_minus_log(a, b, m, s, policy)
    g1 = gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b)
    g2 = gamma(c) * gamma(a + b - c) * rgamma(a) * rgamma(b)
    v1, m1 = _series(a, b, a + b - c + 1.0, s, policy)
    v2, m2 = _series(c - a, c - b, c - a - b + 1.0, s, policy)
    p2 = s ** (c - a - b)
    t1 = g1 * v1
    t2 = g2 * p2 * v2
    val = t1 + t2
    bound = abs(g1) * m1 + abs(g2 * p2) * m2
    return val, bound / max(abs(val), 1e-300)


def _one_minus_log(a, b, m, s, policy):
    """2F1(a, b; a+b+m; 1-s) for integer m >= 0 (logarithmic case)."""
    c = a + b + m
    gc = gamma(c)
    first = 0j
    first_big = 0.0
    if m > 0:
        pre = gc * math.factorial(m - 1) * rgamma(a + m) * rgamma(b + m)
        term = 1.0 + 0j
        acc = 0j
        # sum_k (a)_k (b)_k / (k! (1-m)_k) s^k
        for k in range(m):
            if k > 0:
                term *= (a + k - 1) * (b + k - 1) / (k * (k - m)) * s
            acc += term
            first_big = max(first_big, abs(term))
        first = pre * acc
        first_big *= abs(pre)
    pre2 = -((-s) ** m) * gc * rgamma(a) * rgamma(b)
    if pre2 == 0:
        return first, first_big / max(abs(first), 1e-300)
    ln_s = cmath.log(s)
    psi_1 = digamma(1.0)
    psi_m1 = digamma(m + 1.0)
    psi_a = digamma(a + m)
    psi_b = digamma(b + m)
    coef = 1.0 / math.factorial(m) + 0j
    acc = 0j
    big = 0.0
    quiet = 0
    for k in range(policy.max_terms):
        if k > 0:
            coef *= (a + m + k - 1) * (b + m + k - 1) / (k * (k + m)) * s
            psi_1 += 1.0 / k
            psi_m1 += 1.0 / (k + m)
            psi_a += 1.0 / (a + m + k - 1)
            psi_b += 1.0 / (b + m + k - 1)
        term = coef * (ln_s - psi_1 - psi_m1 + psi_a + psi_b)
        acc += term
        at = abs(term)
        big = max(big, at)
        if at == 0.0:
            break
        if at <= policy.rel_tol * abs(acc) + policy.abs_tol:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    else:
        raise ConvergenceError("logarithmic 2F1 expansion did not converge")
    val = first + pre2 * acc
    bound = first_big + abs(pre2) * big
    return val, bound / max(abs(val), 1e-300)


def _inverse(a, b, c, z, s, policy):
    """Expansion about infinity in powers of 1/z (needs a - b not an integer)."""
    w = 1.0 / z
    mz = -z
    g1 = gamma(c) * gamma(b - a) * rgamma(b) * rgamma(c - a)
    g2 = gamma(c) * gamma(a - b) * rgamma(a) * rgamma(c - b)
    v1, m1 = _series(a, a - c + 1.0, a - b + 1.0, w, policy)
    v2, m2 = _series(b, b - c + 1.0, b - a + 1.0, w, policy)
    p1 = mz ** (-a)
    p2 = mz ** (-b)
    val = g1 * p1 * v1 + g2 * p2 * v2
    bound = abs(g1 * p1) * m1 + abs(g2 * p2) * m2
    return val, bound / max(abs(val), 1e-300)


def _pfaffed(method):
    def run(a, b, c, z, s, policy):
        zp = -z / s
        sp = 1.0 / s  # 1 - z/(z-1)
        n = _nonpos_int(c - b)
        if n is not None:
            # c - b = -n turns the transformed function into a polynomial
            val, big = _poly(n, a, c, zp)
            return s ** (-a) * val, big / max(abs(val), 1e-300)
        val, loss = method(a, c - b, c, zp, sp, policy)
        return s ** (-a) * val, loss

    return run


_METHODS = {
    "direct": _direct,
    "pfaff": _pfaff,
    "one_minus": _one_minus,
    "inverse": _inverse,
    "pfaff_one_minus": _pfaffed(_one_minus),
    "pfaff_inverse": _pfaffed(_inverse),
}


def _candidates(a, b, c, z, s):
    _, d_cab = _int_distance(c - a - b)
    _, d_ab = _int_distance(a - b)
    az = abs(z)
    out = [
        (az, "direct"),
        (az / abs(s), "pfaff"),
        (abs(s), "one_minus"),
        (1.0 / abs(s), "pfaff_one_minus"),
    ]
    near = lambda d: _DEGENERATE < d < _NEAR_DEGENERATE
    if near(d_cab):
        out = [o for o in out if o[1] != "one_minus"]
    if near(d_ab):
        out = [o for o in out if o[1] != "pfaff_one_minus"]
    if d_ab >= _NEAR_DEGENERATE:
        out.append((1.0 / az, "inverse"))
    if d_cab >= _NEAR_DEGENERATE:
        out.append((abs(s) / az, "pfaff_inverse"))
    out.sort()
    return out


def _hyp2f1_inner(a, b, c, z, s, policy):
    """Core evaluator; ``s`` is ``1 - z`` supplied exactly when known."""
    # fixed order of the symmetric pair makes F(a, b) and F(b, a) bit-identical
    if (b.real, b.imag) < (a.real, a.imag):
        a, b = b, a
    for p, q in ((a, b), (b, a)):
        n = _nonpos_int(p)
        if n is not None:
            zp = -z / s
            if abs(zp) < abs(z) and abs(z) > 0.5:
                val, big = _poly(n, c - q, c, zp)
                return s**n * val, big / max(abs(val), 1e-300)
            val, big = _poly(n, q, c, z)
            return val, big / max(abs(val), 1e-300)
    best = None
    for mod, name in _candidates(a, b, c, z, s):
        if mod > R0:
            break
        val, loss = _METHODS[name](a, b, c, z, s, policy)
        if name not in ("direct", "pfaff"):
            loss *= _GAMMA_PENALTY
        if np.isfinite(val) and loss <= _MAX_LOSS:
            return val, loss
        if np.isfinite(val) and (best is None or loss < best[1]):
            best = (val, loss)
    options = [best] if best is not None else []
    for route in (_ode_route, _euler_route):
        try:
            val, loss = route(a, b, c, z, s, policy)
        except (ParameterError, QuadratureError, ConvergenceError):
            continue
        if np.isfinite(val):
            options.append((val, loss))
            if loss <= _MAX_LOSS:
                break
    if not options:
        raise ConvergenceError(f"no evaluation route for 2F1({a}, {b}; {c}; {z})")
    return min(options, key=lambda o: o[1])


def _check_cut(z):
    if z.imag == 0.0 and z.real >= 1.0:
        raise CutError(f"2F1 argument {z.real} lies on the cut [1, inf)")


def gauss_2f1(a, b, c, z, policy: SeriesPolicy = DEFAULT_SERIES) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z) on the cut plane.

    Raises
    ------
    ParameterError
        ``c`` is a nonpositive integer.
    CutError
        ``z`` is real and ``>= 1``.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if _nonpos_int(c) is not None:
        raise ParameterError(f"c = {c} is a nonpositive integer")
    _check_cut(z)
    if z == 0:
        return 1.0 + 0j
    return _hyp2f1_inner(a, b, c, z, 1.0 - z, policy)[0]


def gauss_2f1_near_one(a, b, c, s, policy: SeriesPolicy = DEFAULT_SERIES) -> complex:
    """2F1(a, b; c; 1 - s) with ``s`` given directly.

    Use when ``1 - s`` would round to 1; the expansion about ``z = 1`` only
    ever sees ``s``.
    """
    a, b, c, s = complex(a), complex(b), complex(c), complex(s)
    if _nonpos_int(c) is not None:
        raise ParameterError(f"c = {c} is a nonpositive integer")
    z = 1.0 - s
    if s.imag == 0.0 and s.real <= 0.0:
        raise CutError("1 - s lies on the cut [1, inf)")
    if z == 0:
        return 1.0 + 0j
    return _hyp2f1_inner(a, b, c, z, s, policy)[0]


# ---------------------------------------------------------------------------
# fallback routes


def _ode_route(a, b, c, z, s, policy):
    """Taylor continuation of the hypergeometric ODE along the ray from 0.

    Runs twice with different step lengths; their disagreement measures how
    much the path amplifies rounding errors and is folded into the loss.
    """
    if abs(z) <= 0.5:
        return _direct(a, b, c, z, s, policy)
    v1, l1 = _ode_walk(a, b, c, z, policy, 0.5)
    v2, l2 = _ode_walk(a, b, c, z, policy, 0.3)
    spread = abs(v1 - v2) / (2.2e-16 * max(abs(v1), 1e-300))
    return v1, max(l1, l2, spread)


def _ode_walk(a, b, c, z, policy, fraction):
    direction = z / abs(z)
    z0 = 0.5 * direction
    w, big_w = _series(a, b, c, z0, policy)
    dw, big_dw = _series(a + 1.0, b + 1.0, c + 1.0, z0, policy)
    dw *= a * b / c
    loss = max(big_w / max(abs(w), 1e-300), big_dw * abs(a * b / c) / max(abs(dw), 1e-300))
    for _ in range(10_000):
        remaining = z - z0
        step = fraction * min(abs(z0), abs(1.0 - z0))
        if abs(remaining) <= step:
            h = remaining
        else:
            h = remaining / abs(remaining) * step
        w, dw, step_loss = _taylor_step(a, b, c, z0, w, dw, h, policy)
        loss = max(loss, step_loss)
        z0 = z0 + h
        if h == remaining:
            return w, loss
    raise ConvergenceError("ODE continuation did not reach the target")


def _taylor_step(a, b, c, z0, w, dw, h, policy):
    # z(1-z) w'' + [c - (a+b+1) z] w' - ab w = 0, expanded about z0
    q0 = z0 * (1.0 - z0)
    q1 = 1.0 - 2.0 * z0
    p0 = c - (a + b + 1.0) * z0
    e_prev, e_cur = w, dw
    val = w + dw * h
    der = dw
    hk = h  # h^k for k = 1
    mag = abs(w) + abs(dw * h)
    quiet = 0
    for k in range(policy.max_terms):
        e_next = ((k + a) * (k + b) * e_prev - (k + 1) * (q1 * k + p0) * e_cur) / (q0 * (k + 1) * (k + 2))
        hk1 = hk * h
        t_val = e_next * hk1
        t_der = (k + 2) * e_next * hk
        val += t_val
        der += t_der
        mag += abs(t_val)
        if abs(t_val) <= policy.rel_tol * abs(val) and abs(t_der) <= policy.rel_tol * abs(der) + 1e-300:
            quiet += 1
            if quiet >= 3:
                return val, der, mag / max(abs(val), 1e-300)
        else:
            quiet = 0
        e_prev, e_cur, hk = e_cur, e_next, hk1
    raise ConvergenceError("Taylor step did not converge")


def _euler_route(a, b, c, z, s, policy):
    for p, q in ((a, b), (b, a)):
        if (c - q).real > 0 and q.real > 0:
            val, err = _euler_integral(p, q, c, z, QuadraturePolicy(abscissae_budget=4000, rel_tol=1e-13))
            # express the quadrature error in the same units as series cancellation
            return val, max(1.0, err / (2.2e-16 * max(abs(val), 1e-300)))
    raise ParameterError("Euler integral needs Re(c) > Re(b) > 0")


def _euler_integral(a, b, c, z, qpolicy):
    lognorm = ln_gamma(c) - ln_gamma(c - b) - ln_gamma(b)
    bm1 = b - 1.0
    cbm1 = c - b - 1.0

    def g(u, left, right):
        one_minus_uz = 1.0 - u * z
        return np.exp(lognorm + bm1 * np.log(left) + cbm1 * np.log(right) - a * np.log(one_minus_uz + 0j))

    # (1 - u z)^(-a) peaks near u = 1/z; split there so that nodes cluster on it
    w = 1.0 / z
    if 0.02 < w.real < 0.98 and abs(w.imag) < 0.25:
        u0 = w.real
        lo = tanh_sinh(
            lambda u, l, r: g(u, l, (1.0 - u0) + r), 0.0, u0, exponents=(bm1.real, 0.0), policy=qpolicy
        )
        hi = tanh_sinh(
            lambda u, l, r: g(u, u0 + l, r), u0, 1.0, exponents=(0.0, cbm1.real), policy=qpolicy
        )
        return lo.value + hi.value, lo.error + hi.error
    est = tanh_sinh(g, 0.0, 1.0, exponents=(bm1.real, cbm1.real), policy=qpolicy)
    return est.value, est.error


def euler_2f1_oracle(a, b, c, z, policy: QuadraturePolicy | None = None) -> complex:
    """2F1 through its Euler integral, by tanh-sinh quadrature.

    Independent of the series machinery in ``gauss_2f1``; requires
    ``Re c > Re b > 0``.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if not (c.real > b.real > 0):
        raise ParameterError("Euler integral needs Re(c) > Re(b) > 0")
    _check_cut(z)
    if z == 0:
        return 1.0 + 0j
    policy = policy or QuadraturePolicy(abscissae_budget=4000, rel_tol=1e-12)
    return _euler_integral(a, b, c, z, policy)[0]


# ---------------------------------------------------------------------------
# identities


def _check_arg_one_minus(u):
    u = complex(u)
    _check_cut(u)
    return u


def transform_linear(a, d, c, u) -> IdentityResidual:
    """2F1(a, c+d; c; u) against (1-u)^(-a) 2F1(a, -d; c; u/(u-1))."""
    u = _check_arg_one_minus(u)
    a, d, c = complex(a), complex(d), complex(c)
    lhs = gauss_2f1(a, c + d, c, u)
    rhs = (1.0 - u) ** (-a) * gauss_2f1(a, -d, c, u / (u - 1.0))
    return IdentityResidual.of(lhs, rhs)


def transform_quadratic_0(a, b, u) -> IdentityResidual:
    """2F1(a, b; 2a; u) against (1-u/2)^(-b) 2F1(b/2, (b+1)/2; a+1/2; u^2/(2-u)^2)."""
    u = _check_arg_one_minus(u)
    a, b = complex(a), complex(b)
    lhs = gauss_2f1(a, b, 2.0 * a, u)
    rhs = (1.0 - 0.5 * u) ** (-b) * gauss_2f1(0.5 * b, 0.5 * (b + 1.0), a + 0.5, u * u / (2.0 - u) ** 2)
    return IdentityResidual.of(lhs, rhs)


def transform_quadratic_1(a, b, u) -> IdentityResidual:
    """2F1(a, a+1/2; b; u) against its (1 + sqrt(1-u)) quadratic image."""
    u = _check_arg_one_minus(u)
    a, b = complex(a), complex(b)
    r = 1.0 + cmath.sqrt(1.0 - u)
    lhs = gauss_2f1(a, a + 0.5, b, u)
    rhs = 2.0 ** (2.0 * a) * r ** (-2.0 * a) * gauss_2f1(2.0 * a, 2.0 * a - b + 1.0, b, u / (r * r))
    return IdentityResidual.of(lhs, rhs)


def closed_id1(a, u) -> complex:
    """Closed form of 2F1(a-1/2, a; 2a; u)."""
    u = _check_arg_one_minus(u)
    a = complex(a)
    return 2.0 ** (2.0 * a - 1.0) * (1.0 + cmath.sqrt(1.0 - u)) ** (1.0 - 2.0 * a)


def closed_id2(a, u) -> complex:
    """Closed form of 2F1(a, a+1/2; 2a; u)."""
    u = _check_arg_one_minus(u)
    return closed_id1(a, u) / cmath.sqrt(1.0 - u)


# ---------------------------------------------------------------------------
# generalized hypergeometric series


def hyper_pfq(
    upper: Sequence,
    lower: Sequence,
    z,
    policy: SeriesPolicy = DEFAULT_SERIES,
) -> complex:
    """Partial sums of pFq inside its disc of convergence.

    Only ``p <= q + 1`` is supported, and ``|z| < 1`` is required when
    ``p == q + 1``.
    """
    upper = [complex(v) for v in upper]
    lower = [complex(v) for v in lower]
    z = complex(z)
    p, q = len(upper), len(lower)
    if p > q + 1:
        raise ParameterError("pFq with p > q + 1 diverges")
    if any(_nonpos_int(v) is not None for v in lower):
        raise ParameterError("lower parameter is a nonpositive integer")
    if p == q + 1 and abs(z) >= 1.0:
        raise ParameterError(f"|z| = {abs(z)} outside the disc of convergence")
    term = 1.0 + 0j
    total = 1.0 + 0j
    quiet = 0
    for k in range(policy.max_terms):
        num = 1.0 + 0j
        for v in upper:
            num *= v + k
        den = float(k + 1)
        for v in lower:
            den *= v + k
        term *= num / den * z
        total += term
        at = abs(term)
        if at == 0.0:
            return total
        if at <= policy.rel_tol * abs(total) + policy.abs_tol:
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise ConvergenceError(f"pFq series did not converge in {policy.max_terms} terms")
