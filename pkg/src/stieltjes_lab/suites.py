"""Verification suites run by ``stieltjes-lab verify``.

Each suite returns a list of :class:`VerificationReport` rows, one per
(identity, parameter set).  Residuals are absolute unless the identity name
ends in ``-rel``.
"""

from __future__ import annotations

import cmath
import math
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable

import numpy as np

from . import humbert as hb
from . import jacobi as jc
from . import measures as ms
from . import special as sf
from . import stieltjes as st
from .config import RunConfig
from .errors import ParameterError, StieltjesLabError
from .report import VerificationReport

LAMBDAS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.5)
BETA_PARAMS = ((0.0, 0.0), (0.5, 0.5), (-0.5, -0.5), (1.5, 0.5), (0.3, 2.1))


def sweep(fn: Callable, items, cfg: RunConfig) -> list:
    """``[fn(x) for x in items]`` evaluated on a thread pool, in input order.

    Library errors become NaN so that the row fails instead of aborting the run.
    """

    def safe(x):
        try:
            return fn(x)
        except StieltjesLabError:
            return math.nan

    items = list(items)
    workers = min(cfg.workers(), max(1, len(items)))
    if workers == 1:
        return [safe(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(safe, items))


def _row(name, params, fn, items, cfg, nominal):
    started = time.perf_counter()
    res = sweep(fn, items, cfg)
    return VerificationReport.from_residuals(name, params, res, cfg.scaled(nominal), started)


def _rel(a, b):
    return abs(a - b) / (1.0 + abs(b))


def _scaled(r):
    return r.residual / (1.0 + abs(r.rhs))


def random_2f1_cases(n: int, seed: int, euler: bool = False):
    """Random ``(a, b, c, z)`` with ``z`` at least 0.05 away from the cut.

    With ``euler`` the parameters satisfy ``Re c > Re b > 0``.
    """
    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < n:
        r = rng.uniform(0.0, 3.0)
        th = rng.uniform(-math.pi, math.pi)
        z = r * cmath.exp(1j * th)
        if z.real >= 1.0 and abs(z.imag) < 0.05:
            continue
        a = rng.uniform(-3.0, 3.0)
        if euler:
            b = rng.uniform(0.1, 3.0)
            c = b + rng.uniform(0.1, 3.0)
        else:
            b = rng.uniform(-3.0, 3.0)
            c = rng.uniform(-3.0, 4.0)
            if abs(c - round(c)) < 0.05 and round(c) <= 0:
                continue
        cases.append((a, b, c, z))
    return cases


def random_cut_plane(n: int, seed: int, r_max: float = 2.0):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        u = rng.uniform(0, r_max) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        if u.real >= 1.0 and abs(u.imag) < 0.05:
            continue
        out.append(u)
    return out


def suite_special_functions(cfg: RunConfig) -> list:
    rows = []
    cases = random_2f1_cases(200, seed=11, euler=True)
    rows.append(
        _row(
            "2f1-vs-euler-rel",
            "200 random (a,b,c,z)",
            lambda t: _rel(sf.gauss_2f1(*t), sf.euler_2f1_oracle(*t)),
            cases,
            cfg,
            1e-10,
        )
    )
    rng = np.random.default_rng(12)
    us = random_cut_plane(100, seed=13, r_max=1.5)
    p3 = rng.uniform(-2.0, 2.0, (100, 3))
    p3[:, 2] = rng.uniform(0.3, 3.0, 100)
    rows.append(
        _row(
            "lin1-rel",
            "100 random",
            lambda i: _scaled(sf.transform_linear(p3[i, 0], p3[i, 1], p3[i, 2], us[i])),
            range(100),
            cfg,
            1e-11,
        )
    )
    p2 = rng.uniform(0.2, 2.5, (100, 2))
    rows.append(
        _row(
            "quad0-rel",
            "100 random",
            lambda i: _scaled(sf.transform_quadratic_0(p2[i, 0], p2[i, 1], us[i])),
            range(100),
            cfg,
            1e-11,
        )
    )
    rows.append(
        _row(
            "quad1-rel",
            "100 random",
            lambda i: _scaled(sf.transform_quadratic_1(p2[i, 0], p2[i, 1] + 0.5, us[i])),
            range(100),
            cfg,
            1e-11,
        )
    )
    grid = [complex(x, y) for x in np.arange(-3.0, 1.0, 0.5) for y in (-1.0, -0.3, 0.3, 1.0)]
    grid += [-2.0, -0.5, 0.3, 0.9]
    for a in (0.6, 1.0, 1.5, 2.3, 4.0):
        rows.append(
            _row(
                "closed-id1",
                f"a={a:g}",
                lambda u, a=a: abs(sf.closed_id1(a, u) - sf.gauss_2f1(a - 0.5, a, 2 * a, u)),
                grid,
                cfg,
                1e-11,
            )
        )
        rows.append(
            _row(
                "closed-id2",
                f"a={a:g}",
                lambda u, a=a: abs(sf.closed_id2(a, u) - sf.gauss_2f1(a, a + 0.5, 2 * a, u)),
                grid,
                cfg,
                1e-11,
            )
        )
    cases = random_2f1_cases(100, seed=14)
    rows.append(
        _row(
            "2f1-symmetry",
            "100 random",
            lambda t: abs(sf.gauss_2f1(t[0], t[1], t[2], t[3]) - sf.gauss_2f1(t[1], t[0], t[2], t[3])),
            cases,
            cfg,
            1e-14,
        )
    )
    rows.append(
        _row(
            "2f1-conjugation-rel",
            "100 random",
            lambda t: _rel(sf.gauss_2f1(*t[:3], t[3].conjugate()), sf.gauss_2f1(*t).conjugate()),
            cases,
            cfg,
            1e-12,
        )
    )
    return rows


def _reference_ordinary():
    """Measures with a closed ordinary transform."""
    log_uniform = lambda z: 0.5 * (cmath.log(z + 1.0) - cmath.log(z - 1.0))
    return [
        (ms.wigner(), st.stieltjes_wigner),
        (ms.arcsine(), st.stieltjes_arcsine),
        (ms.bernoulli_sym(), st.stieltjes_bernoulli),
        (ms.free_poisson_quarter(), st.stieltjes_free_poisson),
        (ms.beta_measure(ms.BetaParams(0.0, 0.0)), log_uniform),
    ]


def _global_measures():
    return [
        ms.wigner(),
        ms.arcsine(),
        ms.bernoulli_sym(),
        ms.free_poisson_quarter(),
        ms.kappa(1.0),
        ms.bernoulli_power_measure(2.0),
        ms.beta_measure(ms.BetaParams(0.3, 2.1)),
    ]


def suite_beta_closed(cfg: RunConfig) -> list:
    rows = []
    grid = list(cfg.grid())
    pol = cfg.policy()
    for lam in LAMBDAS:
        for g, b in BETA_PARAMS:
            p = ms.BetaParams(g, b)
            m = ms.beta_measure(p)

            def res(z, lam=lam, p=p, m=m):
                q = st.gst_quadrature(lam, m, z, pol).value
                c1 = st.gst_beta_closed(lam, p, z).value
                c2 = st.gst_beta_closed_alt(lam, p, z).value
                return max(_rel(c1, q), _rel(c2, q))

            rows.append(_row("gst1-gst2-vs-quadrature-rel", f"lambda={lam:g},gamma={g:g},beta={b:g}", res, grid, cfg, 1e-8))

            def mutual(z, lam=lam, p=p):
                return abs(st.gst_beta_closed(lam, p, z).value - st.gst_beta_closed_alt(lam, p, z).value)

            rows.append(_row("gst1-vs-gst2", f"lambda={lam:g},gamma={g:g},beta={b:g}", mutual, grid, cfg, 1e-10))
    for m, closed in _reference_ordinary():
        rows.append(
            _row(
                "lambda-one-reduction",
                m.name,
                lambda z, m=m, closed=closed: abs(st.gst_quadrature(1.0, m, z, pol).value - closed(z)),
                grid,
                cfg,
                1e-10,
            )
        )
    far = [1e4j, -1e4j, 1e4 * cmath.exp(0.3j)]
    for m in _global_measures():
        for lam in LAMBDAS:
            rows.append(
                _row(
                    "decay-rel",
                    f"{m.name},lambda={lam:g}",
                    lambda z, m=m, lam=lam: abs(st.gst_quadrature(lam, m, z, pol).value * z**lam - 1.0),
                    far,
                    cfg,
                    1e-3,
                )
            )
        rows.append(
            _row(
                "conjugation",
                m.name,
                lambda z, m=m: max(
                    abs(
                        st.gst_quadrature(lam, m, z.conjugate(), pol).value
                        - st.gst_quadrature(lam, m, z, pol).value.conjugate()
                    )
                    for lam in (0.5, 2.5)
                ),
                grid[::4],
                cfg,
                1e-13,
            )
        )
    return rows


def suite_prop1(cfg: RunConfig) -> list:
    rows = []
    grid = list(cfg.grid())
    pol = cfg.policy()
    for k in range(4):
        for lam in LAMBDAS + (k + 0.75, k + 2.0):
            g = lam - 0.5 - k
            if not g > -1:
                continue
            m = ms.beta_measure(ms.BetaParams(g, g))
            rows.append(
                _row(
                    "prop1-vs-quadrature-rel",
                    f"k={k},lambda={lam:g}",
                    lambda z, lam=lam, k=k, m=m: _rel(st.prop1_closed(lam, k, z).value, st.gst_quadrature(lam, m, z, pol).value),
                    grid,
                    cfg,
                    1e-8,
                )
            )
            rows.append(
                _row(
                    "prop1-arcsine-form",
                    f"k={k},lambda={lam:g}",
                    lambda z, lam=lam, k=k: abs(st.prop1_closed(lam, k, z).value - st.prop1_arcsine_form(lam, k, z)),
                    grid,
                    cfg,
                    1e-12,
                )
            )
    samples = list(st.EvalGrid.upper_half(10, seed=5))
    for lam in (0.5, 1.5, 2.0, 3.7):
        rows.append(
            _row(
                "prop1-k0-reduction",
                f"lambda={lam:g}",
                lambda z, lam=lam: abs(st.prop1_closed(lam, 0, z).value - st.examp1_closed(lam, z)),
                samples,
                cfg,
                1e-12,
            )
        )
    for lam in (1.5, 2.0, 3.0):
        rows.append(
            _row(
                "prop1-k1-reduction",
                f"lambda={lam:g}",
                lambda z, lam=lam: abs(st.prop1_closed(lam, 1, z).value - st.examp2_closed(lam, z)),
                samples,
                cfg,
                1e-12,
            )
        )
    rows.append(_row("wigner-arcsine-relation", "", st.wigner_arcsine_residual, samples, cfg, 1e-12))
    for lam in (0.5, 1.0, 2.0, 3.7):
        mu = ms.beta_measure(ms.BetaParams(lam - 0.5, lam - 0.5))
        started = time.perf_counter()
        rep = st.power_relation_check(lam, mu, ms.wigner(), grid, cfg.tolerance, pol)
        rows.append(
            VerificationReport.from_residuals(
                "examp1-power-relation", rep.params, [rep.max_residual], cfg.tolerance, started
            )
        )
    for lam in (1.5, 2.0, 3.0):
        m = ms.beta_measure(ms.BetaParams(lam - 1.5, lam - 1.5))
        rows.append(
            _row(
                "examp2-vs-quadrature",
                f"lambda={lam:g}",
                lambda z, lam=lam, m=m: abs(st.gst_quadrature(lam, m, z, pol).value - st.examp2_closed(lam, z)),
                grid,
                cfg,
                1e-8,
            )
        )
    return rows


def suite_prop2(cfg: RunConfig) -> list:
    rows = []
    grid = list(cfg.grid())
    pol = cfg.policy()
    for k in (1, 2, 3):
        for lam in (k, k + 0.5, k + 2.0):
            for swapped in (False, True):
                m = ms.beta_measure(st.prop2_params(lam, k, swapped))
                rows.append(
                    _row(
                        "prop2-vs-quadrature",
                        f"k={k},lambda={lam:g},swapped={swapped}",
                        lambda z, lam=lam, k=k, s=swapped, m=m: abs(
                            st.prop2_closed(lam, k, z, s).value - st.gst_quadrature(lam, m, z, pol).value
                        ),
                        grid,
                        cfg,
                        1e-8,
                    )
                )
    samples = list(st.EvalGrid.upper_half(10, seed=6)) + [2 + 1j, 3 + 2j]
    rows.append(_row("wigner-functional", "", st.wigner_functional_residual, samples, cfg, 1e-13))
    rows.append(_row("wigner-square", "z+1", st.wigner_square_residual, samples, cfg, 1e-13))
    rows.append(_row("wigner-square", "z-1", lambda z: st.wigner_square_residual(z, True), samples, cfg, 1e-13))
    return rows


def _moment_formula(lam, k):
    return math.exp(
        math.lgamma(2 * k + 1) + math.lgamma(lam + k) - math.lgamma(lam) - math.lgamma(k + 1)
        - (math.lgamma(lam + 2 * k) - math.lgamma(lam))
    )


def _duplication_exact(lam: int, k: int) -> bool:
    # (2k)!(lam)_k / (k! (lam)_2k) against (lam)_k (1/2)_k / ((lam/2)_k ((lam+1)/2)_k)
    def poch(x, n):
        out = Fraction(1)
        for j in range(n):
            out *= x + j
        return out

    lam = Fraction(lam)
    lhs = Fraction(math.factorial(2 * k)) * poch(lam, k) / (math.factorial(k) * poch(lam, 2 * k))
    rhs = poch(lam, k) * poch(Fraction(1, 2), k) / (poch(lam / 2, k) * poch((lam + 1) / 2, k))
    return lhs == rhs


def suite_bernoulli(cfg: RunConfig) -> list:
    rows = []
    grid = list(cfg.grid())
    pol = cfg.policy()
    for lam in (1.0, 1.5, 2.0, 3.0):
        m = ms.bernoulli_power_measure(lam)
        rows.append(
            _row("bernoulli-power-mass", f"lambda={lam:g}", lambda _, m=m: abs(ms.integrate(m, np.ones_like, pol).value - 1.0), [0], cfg, 1e-8)
        )
        rows.append(
            _row(
                "bernoulli-power-moments-rel",
                f"lambda={lam:g},k<=10",
                lambda k, m=m, lam=lam: abs(ms.moment(m, 2 * k, pol) / _moment_formula(lam, k) - 1.0),
                range(11),
                cfg,
                1e-7,
            )
        )
        rows.append(
            _row(
                "bernoulli-power-odd-moments",
                f"lambda={lam:g}",
                lambda k, m=m: abs(ms.moment(m, 2 * k + 1, pol)),
                range(5),
                cfg,
                1e-10,
            )
        )
    for lam in (1.0, 1.5, 2.0, 3.0, 3.5):
        rows.append(
            _row("bernoulli-power-identity", f"lambda={lam:g}", lambda z, lam=lam: st.bernoulli_power_identity(lam, z, pol), grid, cfg, 1e-8)
        )

    def rejects(lam):
        try:
            ms.bernoulli_power_measure(lam)
        except ParameterError:
            return 0.0
        return 1.0

    rows.append(_row("bernoulli-power-rejects", "lambda=0.9,0.5", rejects, [0.9, 0.5], cfg, 0.0))
    rows.append(
        _row(
            "moment-duplication-exact",
            "lambda=1..6,k<=10",
            lambda t: 0.0 if _duplication_exact(*t) else 1.0,
            [(lam, k) for lam in range(1, 7) for k in range(11)],
            cfg,
            0.0,
        )
    )
    return rows


def suite_shrinkage(cfg: RunConfig) -> list:
    rows = []
    grid = list(cfg.grid())
    pol = cfg.policy()
    for p in (0.3, 0.5, 0.7):
        for lam in (1.0, 2.0, 4.0):
            rows.append(
                _row(
                    "shrinkage",
                    f"p={p:g},lambda={lam:g}",
                    lambda z, p=p, lam=lam: max(st.shrinkage_identity(lam, p, z, pol)),
                    grid,
                    cfg,
                    1e-9,
                )
            )
    for lam in (1.0, 2.0, 3.0, 4.0):
        rows.append(
            _row("shrinkage-half", f"lambda={lam:g}", lambda z, lam=lam: st.shrinkage_half_residual(lam, z, pol), grid, cfg, 1e-9)
        )
    return rows


def suite_free_poisson(cfg: RunConfig) -> list:
    rows = []
    pol = cfg.policy()
    points = list(st.EvalGrid.upper_half(20, seed=7))
    for lam in (0.5, 1.0, 2.0, 3.5):
        res = sweep(lambda z, lam=lam: st.free_poisson_identity(lam, z, pol), points, cfg)
        double = [r[0] if isinstance(r, tuple) else math.nan for r in res]
        single = [r[1] if isinstance(r, tuple) else math.nan for r in res]
        rows.append(VerificationReport.from_residuals("free-poisson-double", f"lambda={lam:g}", double, cfg.scaled(1e-7)))
        rows.append(VerificationReport.from_residuals("free-poisson-single", f"lambda={lam:g}", single, cfg.scaled(1e-8)))
        m = ms.kappa_convolution_density(lam)
        rows.append(
            _row("kappa-product-mass", f"lambda={lam:g}", lambda _, m=m: abs(ms.integrate(m, np.ones_like, pol).value - 1.0), [0], cfg, 1e-9)
        )
    for m in (ms.beta_measure(ms.BetaParams(0.0, 0.0)), ms.wigner()):
        for lam in (1.0, 2.0, 3.0):
            rows.append(
                _row(
                    "kappa-reduction",
                    f"{m.name},lambda={lam:g}",
                    lambda z, lam=lam, m=m: st.kappa_reduction_identity(lam, m, z, pol),
                    points + [3.0, 2.0],
                    cfg,
                    1e-7,
                )
            )
    rows.append(_row("free-poisson-forms", "", st.free_poisson_forms_residual, points + [2 + 3j], cfg, 1e-13))
    upper = list(st.EvalGrid.upper_half(200, seed=8, r_min=0.05, r_max=20.0))
    for name, g in (
        ("wigner", st.stieltjes_wigner),
        ("bernoulli", st.stieltjes_bernoulli),
        ("free-poisson", st.stieltjes_free_poisson),
    ):
        rows.append(
            _row("nevanlinna-sign", name, lambda z, g=g: 0.0 if st.nevanlinna_sign(g, z) < 0 else 1.0, upper, cfg, 0.0)
        )
    return rows


def suite_jacobi_expansion(cfg: RunConfig) -> list:
    rows = []
    xs = np.linspace(-1.0, 1.0, 101)
    zs = [3.0, 2.0 + 1.0j, -2.0 + 0.5j, 1.0 + 1.5j, 2.2j, -3.0 + 1.0j]
    pol = cfg.policy()
    for lam in (1.0, 2.0):
        for g, b in ((0.5, 0.5), (0.3, 2.1)):
            p = ms.BetaParams(g, b)
            tag = f"lambda={lam:g},gamma={g:g},beta={b:g}"

            def sup_err(z, n_max=40, lam=lam, p=p):
                approx = jc.kernel_reconstruct(lam, p, z, xs, jc.ExpansionTruncation(n_max))
                return float(np.max(np.abs(approx - (z - xs) ** (-lam))))

            rows.append(_row("kernel-reconstruction", tag, sup_err, zs, cfg, 1e-8))

            def non_monotone(z, sup_err=sup_err):
                errs = [sup_err(z, n) for n in range(5, 41, 5)]
                # once at rounding level the error may wobble
                return float(any(e2 > e1 and e2 > 1e-13 for e1, e2 in zip(errs, errs[1:])))

            rows.append(_row("kernel-monotone", tag, non_monotone, zs, cfg, 0.0))
            m = ms.beta_measure(p)

            def integrated(z, lam=lam, p=p, m=m):
                c = jc.kernel_coeffs(lam, p, z, 40)
                table = lambda x: np.tensordot(c, jc.jacobi_table(40, p.gamma, p.beta, x), axes=(0, 0))
                return abs(ms.integrate(m, table, pol).value - st.gst_beta_closed(lam, p, z).value)

            rows.append(_row("kernel-integrated", tag, integrated, zs, cfg, 1e-9))
    rng = np.random.default_rng(9)
    cases = [(rng.uniform(-0.95, 3.0), rng.uniform(-0.95, 3.0), int(rng.integers(0, 21)), rng.uniform(-1, 1)) for _ in range(100)]

    def jac(t):
        p = jc.JacobiParams(t[0], t[1], t[2])
        e = jc.jacobi_poly(p, t[3], "exact")
        return abs(jc.jacobi_poly(p, t[3]) - e) / max(1.0, abs(e))

    rows.append(_row("jacobi-recurrence-vs-exact-rel", "100 random, n<=20", jac, cases, cfg, 1e-11))
    return rows


def suite_humbert(cfg: RunConfig) -> list:
    rows = []
    pol = cfg.policy()
    rng = np.random.default_rng(10)
    ys = [r * cmath.exp(1j * t) for r, t in zip(rng.uniform(2.0, 20.0, 50), rng.uniform(0.02, math.pi - 0.02, 50))]
    for d in (1, 2, 3, 4):
        rows.append(_row("trinomial-residual", f"d={d}", lambda y, d=d: hb.root_select(d, y).residual, ys, cfg, 1e-10))
    rows.append(
        _row("root-2f1-d2", "", lambda y: abs(hb.root_via_2f1_d2(y, check=False) - hb.root_select(2, y).z), ys, cfg, 1e-10)
    )
    for d in (2, 3, 4):
        rows.append(_row("root-series", f"d={d}", lambda y, d=d: hb.series_root_mismatch(d, y), ys[:10], cfg, 1e-9))
    g0 = ys[:8] + [5j, 1 + 3j]
    for alpha in (1.0, 2.5):
        rows.append(_row("gamma0-identity-d2", f"alpha={alpha:g}", lambda y, a=alpha: hb.gamma0_gst_identity_d2(a, y, pol), g0, cfg, 1e-8))
    rows.append(
        _row(
            "gamma0-normalization-d2",
            "z=0.1i,0.05+0.05i",
            lambda t: hb.humbert_functional_normalization(hb.HumbertParams(t[0], 2), t[1], pol),
            [(1.0, 0.1j), (2.0, 0.05 + 0.05j), (0.5, 0.02j)],
            cfg,
            1e-7,
        )
    )
    rows.append(
        _row("d1-wigner", "", lambda y: abs(2.0 * hb.root_select(1, y).z - st.stieltjes_wigner(y)), ys, cfg, 1e-11)
    )
    cases = [(a, x) for a in (0.5, 1.0, 2.0) for x in (-0.9, 0.0, 0.4)]

    def ultra(t):
        h = hb.humbert_coeffs(hb.HumbertParams(t[0], 1), t[1], 10)
        return max(abs(h[n] - jc.ultraspherical_poly(t[0], n, t[1])) for n in range(11))

    rows.append(_row("d1-ultraspherical", "n<=10", ultra, cases, cfg, 1e-10))

    def resub(t):
        d, alpha, x, z = t
        h = hb.humbert_coeffs(hb.HumbertParams(alpha, d), x, 60)
        return abs(np.polyval(h[::-1], z) - (1 - (d + 1) * x * z + z ** (d + 1)) ** (-alpha))

    gen = [(d, a, x, 0.1 * cmath.exp(1j * t)) for d in (1, 2, 3) for a in (0.5, 1.3) for x in (-0.5, 0.7) for t in (0.4, 2.0)]
    rows.append(_row("generating-series", "N=60,|z|=0.1", resub, gen, cfg, 1e-10))
    return rows


SUITES = {
    "special-functions": suite_special_functions,
    "beta-closed": suite_beta_closed,
    "prop1": suite_prop1,
    "prop2": suite_prop2,
    "bernoulli": suite_bernoulli,
    "shrinkage": suite_shrinkage,
    "free-poisson": suite_free_poisson,
    "cohl": suite_jacobi_expansion,
    "humbert": suite_humbert,
}
SUITE_NAMES = ("all",) + tuple(SUITES)


def run_suite(name: str, cfg: RunConfig) -> list:
    """Rows of one suite, or of every suite for ``"all"``."""
    if name == "all":
        return [row for fn in SUITES.values() for row in fn(cfg)]
    if name not in SUITES:
        raise ParameterError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return SUITES[name](cfg)
