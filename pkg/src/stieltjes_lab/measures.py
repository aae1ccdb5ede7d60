"""Compactly supported probability measures: atoms plus a continuous part.

A measure is a :class:`MeasureSpec`.  Its continuous part is a vectorized
density ``density(x, left, right)`` on ``support = (lo, hi)``, where ``left``
and ``right`` are the exact distances to the two ends of the support (see
:mod:`stieltjes_lab.quadrature`).  Declared endpoint exponents let the
tanh-sinh rule pick a safe truncation, and optional interior breakpoints
split the support where the density is not smooth.

Constructors are memoized: a measure is immutable apart from the cache of
density values at quadrature nodes, so repeated calls share that cache.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import ParameterError
from .quadrature import (
    DEFAULT_POLICY,
    Estimate,
    QuadraturePolicy,
    _nodes,
    tanh_sinh,
    truncation_point,
)
from .special import gauss_2f1_near_one


@dataclass(frozen=True)
class BetaParams:
    """Exponents of the beta density ``(1 - x)**gamma * (1 + x)**beta`` on [-1, 1]."""

    gamma: float
    beta: float

    def __post_init__(self):
        if not (self.gamma > -1.0 and self.beta > -1.0):
            raise ParameterError(
                f"beta parameters must exceed -1, got ({self.gamma}, {self.beta})"
            )


class Atom(NamedTuple):
    location: float
    weight: float


@dataclass(frozen=True)
class MeasureSpec:
    """A probability measure with finitely many atoms and a density.

    Attributes
    ----------
    name : str
        Identifier used in reports.
    atoms : tuple of Atom
    density : callable or None
        ``density(x, left, right) -> ndarray``; ``None`` for purely atomic
        measures.
    support : (float, float)
        Interval carrying the density.
    exponents : (float, float)
        Algebraic behaviour of the density at ``lo`` and ``hi``.
    breakpoints : tuple of float
        Interior points where the density is not analytic.
    """

    name: str
    atoms: tuple = ()
    density: Callable | None = None
    support: tuple = (-1.0, 1.0)
    exponents: tuple = (0.0, 0.0)
    breakpoints: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        for a in self.atoms:
            if not a.weight > 0:
                raise ParameterError(f"atom weight must be positive, got {a.weight}")
        if self.density is not None:
            lo, hi = self.support
            if not hi > lo:
                raise ParameterError("empty support interval")
            if min(self.exponents) <= -1.0:
                raise ParameterError("endpoint exponents must exceed -1")
            if any(not lo < b < hi for b in self.breakpoints):
                raise ParameterError("breakpoints must lie inside the support")

    @property
    def hull(self) -> tuple[float, float]:
        """Smallest interval containing the atoms and the support."""
        pts = [a.location for a in self.atoms]
        if self.density is not None:
            pts.extend(self.support)
        return min(pts), max(pts)

    def pieces(self):
        """Subintervals ``(lo, hi, exponents)`` between breakpoints."""
        if self.density is None:
            return []
        lo, hi = self.support
        cuts = [lo, *sorted(self.breakpoints), hi]
        out = []
        for i in range(len(cuts) - 1):
            e_lo = self.exponents[0] if i == 0 else 0.0
            e_hi = self.exponents[1] if i == len(cuts) - 2 else 0.0
            out.append((cuts[i], cuts[i + 1], (e_lo, e_hi)))
        return out

    def density_on(self, piece: int, x, left, right) -> np.ndarray:
        """Density at tanh-sinh nodes of one piece, memoized by node set.

        ``left``/``right`` are measured from the piece ends and converted to
        distances from the support ends before calling :attr:`density`.
        """
        key = (piece, x.tobytes())
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        lo, hi = self.support
        p_lo, p_hi, _ = self.pieces()[piece]
        sup_left = left if p_lo == lo else x - lo
        sup_right = right if p_hi == hi else hi - x
        vals = np.asarray(self.density(x, sup_left, sup_right), dtype=float)
        self._cache[key] = vals
        return vals


def _vectorize(fn):
    return np.frompyfunc(fn, 1, 1)


def _log_beta_norm(g: float, b: float) -> float:
    return (
        math.lgamma(g + b + 2.0)
        - (g + b + 1.0) * math.log(2.0)
        - math.lgamma(g + 1.0)
        - math.lgamma(b + 1.0)
    )


@functools.lru_cache(maxsize=128)
def beta_measure(p: BetaParams) -> MeasureSpec:
    """Normalized ``(1 - x)**gamma (1 + x)**beta`` on [-1, 1]."""
    g, b = float(p.gamma), float(p.beta)
    const = math.exp(_log_beta_norm(g, b))

    def density(x, left, right):
        return const * np.power(right, g) * np.power(left, b)

    return MeasureSpec(
        name=f"beta(gamma={g:g},beta={b:g})",
        density=density,
        support=(-1.0, 1.0),
        exponents=(b, g),
    )


@functools.lru_cache(maxsize=128)
def wigner() -> MeasureSpec:
    """Semicircle law ``(2/pi) sqrt(1 - x**2)`` on [-1, 1]."""
    m = beta_measure(BetaParams(0.5, 0.5))
    return MeasureSpec("wigner", density=m.density, exponents=m.exponents)


@functools.lru_cache(maxsize=128)
def arcsine() -> MeasureSpec:
    """Arcsine law ``1/(pi sqrt(1 - x**2))`` on [-1, 1]."""
    m = beta_measure(BetaParams(-0.5, -0.5))
    return MeasureSpec("arcsine", density=m.density, exponents=m.exponents)


@functools.lru_cache(maxsize=128)
def bernoulli_sym() -> MeasureSpec:
    """Symmetric Bernoulli law ``(delta_{-1} + delta_{1}) / 2``."""
    return MeasureSpec("bernoulli", atoms=(Atom(-1.0, 0.5), Atom(1.0, 0.5)))


@functools.lru_cache(maxsize=128)
def kappa(lam: float) -> MeasureSpec:
    """Symmetric beta law on [0, 1] with density proportional to ``[x(1-x)]**(lam/2 - 1)``."""
    lam = float(lam)
    if not lam > 0:
        raise ParameterError(f"kappa needs lambda > 0, got {lam}")
    e = 0.5 * lam - 1.0
    const = math.exp(math.lgamma(lam) - 2.0 * math.lgamma(0.5 * lam))

    def density(x, left, right):
        return const * np.power(left * right, e)

    return MeasureSpec(f"kappa({lam:g})", density=density, support=(0.0, 1.0), exponents=(e, e))


@functools.lru_cache(maxsize=128)
def free_poisson_quarter() -> MeasureSpec:
    """Free Poisson law with rate 1 and jump size 1/4: ``(2/pi) sqrt((1-x)/x)`` on [0, 1]."""

    def density(x, left, right):
        return (2.0 / math.pi) * np.sqrt(right / left)

    return MeasureSpec("free-poisson", density=density, support=(0.0, 1.0), exponents=(-0.5, 0.5))


@functools.lru_cache(maxsize=128)
def bernoulli_power_measure(lam: float) -> MeasureSpec:
    """Measure whose ``lam``-transform is the ``lam``-th power of the Bernoulli one.

    Atoms of mass ``2**-lam`` at -1 and 1, plus the symmetric density::

        2**(1-lam) * lam*(lam-1)/4 * 2F1(1 - lam/2, (3 - lam)/2; 2; 1 - x**2)

    on [-1, 1], which is bounded and has a kink at 0.

    Raises
    ------
    ParameterError
        For ``lam < 1``, where no such probability measure exists.
    """
    lam = float(lam)
    if not lam >= 1.0:
        raise ParameterError(f"the Bernoulli power measure needs lambda >= 1, got {lam}")
    w = 2.0 ** (-lam)
    atoms = (Atom(-1.0, w), Atom(1.0, w))
    if lam == 1.0:
        return MeasureSpec(f"bernoulli-power({lam:g})", atoms=atoms)
    const = 2.0 ** (1.0 - lam) * lam * (lam - 1.0) / 4.0
    a, b = 1.0 - 0.5 * lam, 0.5 * (3.0 - lam)
    f = _vectorize(lambda s: gauss_2f1_near_one(a, b, 2.0, s).real)

    def density(x, left, right):
        return const * f(x * x).astype(float)

    return MeasureSpec(
        f"bernoulli-power({lam:g})",
        atoms=atoms,
        density=density,
        support=(-1.0, 1.0),
        breakpoints=(0.0,),
    )


@functools.lru_cache(maxsize=128)
def kappa_convolution_density(lam: float) -> MeasureSpec:
    """Law of ``U V`` with ``U ~ kappa(lam)`` and ``V ~ kappa(lam + 1)`` independent.

    The density on [0, 1] is::

        C x**(lam/2 - 1) (1 - x)**(lam - 1/2) 2F1((lam-1)/2, (lam+1)/2; lam + 1/2; 1 - x)

    with ``C = G(lam) G(lam+1) / (G(lam/2) G((lam+1)/2) G(lam+1/2))``.
    """
    lam = float(lam)
    if not lam > 0:
        raise ParameterError(f"lambda must be positive, got {lam}")
    const = math.exp(
        math.lgamma(lam)
        + math.lgamma(lam + 1.0)
        - math.lgamma(0.5 * lam)
        - math.lgamma(0.5 * (lam + 1.0))
        - math.lgamma(lam + 0.5)
    )
    e0, e1 = 0.5 * lam - 1.0, lam - 0.5
    a, b, c = 0.5 * (lam - 1.0), 0.5 * (lam + 1.0), lam + 0.5
    f = _vectorize(lambda s: gauss_2f1_near_one(a, b, c, s).real)

    def density(x, left, right):
        return const * np.power(left, e0) * np.power(right, e1) * f(left).astype(float)

    return MeasureSpec(
        f"kappa-product({lam:g})", density=density, support=(0.0, 1.0), exponents=(e0, e1)
    )


def integrate(
    m: MeasureSpec,
    f: Callable,
    policy: QuadraturePolicy = DEFAULT_POLICY,
) -> Estimate:
    """Integrate a vectorized ``f(x)`` against ``m``.

    Atoms contribute exactly; each piece of the continuous part goes through
    tanh-sinh, and the returned error is the sum of the piece estimates.
    """
    total = 0j
    for a in m.atoms:
        total += a.weight * complex(np.asarray(f(np.array([a.location])))[0])
    err = 0.0
    for i, (lo, hi, exps) in enumerate(m.pieces()):
        g = lambda x, left, right, i=i: f(x) * m.density_on(i, x, left, right)
        est = tanh_sinh(g, lo, hi, exps, policy)
        total += est.value
        err += est.error
    return Estimate(total, err)


def moment(m: MeasureSpec, k: int, policy: QuadraturePolicy = DEFAULT_POLICY) -> float:
    """``k``-th moment of ``m``."""
    if k < 0:
        raise ParameterError("moment order must be nonnegative")
    return integrate(m, lambda x: x**k, policy).value.real


def discretize(m: MeasureSpec, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a fixed tanh-sinh rule with step ``h`` for ``m``.

    Atoms are appended as nodes carrying their masses.
    """
    xs = [np.array([a.location for a in m.atoms], dtype=float)]
    ws = [np.array([a.weight for a in m.atoms], dtype=float)]
    for i, (lo, hi, exps) in enumerate(m.pieces()):
        t_max = truncation_point(exps)
        n = int(math.ceil(t_max / h))
        t = h * np.arange(-n, n + 1, dtype=float)
        x, left, right, w = _nodes(lo, hi, t, h)
        xs.append(x)
        ws.append(w * m.density_on(i, x, left, right))
    return np.concatenate(xs), np.concatenate(ws)


class ProductFunctional:
    """Integration against the law of ``U V`` for independent ``U ~ a``, ``V ~ b``.

    Calling the functional with a vectorized ``f`` evaluates
    ``sum_ij f(u_i v_j) w_i w_j`` on tensor tanh-sinh rules at two step
    sizes; the difference of the two is the error estimate.

    Parameters
    ----------
    a, b : MeasureSpec
    h : float
        Finest step of the tensor rule.  The default keeps each factor
        near 400 nodes or fewer.
    """

    def __init__(self, a: MeasureSpec, b: MeasureSpec, h: float = 1.0 / 32.0):
        for m in (a, b):
            lo, hi = m.hull
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ParameterError("multiplicative convolution needs bounded supports")
        self.a, self.b, self.h = a, b, h
        self._rules = [(discretize(a, s), discretize(b, s)) for s in (2.0 * h, h)]

    def __call__(self, f: Callable) -> Estimate:
        vals = []
        for (ua, wa), (vb, wb) in self._rules:
            grid = np.asarray(f(np.multiply.outer(ua, vb)), dtype=complex)
            vals.append(complex(wa @ grid @ wb))
        return Estimate(vals[1], abs(vals[1] - vals[0]))

    def __repr__(self):
        return f"ProductFunctional({self.a.name} * {self.b.name})"


def mult_convolve(a: MeasureSpec, b: MeasureSpec, h: float = 1.0 / 32.0) -> ProductFunctional:
    """Multiplicative convolution of ``a`` and ``b`` as an integration functional."""
    return ProductFunctional(a, b, h)
