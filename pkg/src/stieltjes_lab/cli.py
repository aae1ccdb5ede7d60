"""``stieltjes-lab``: verification suites and CSV/JSON tables from the command line.

Exit status is 0 when every check passes, 1 when a residual exceeds its
tolerance and 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import humbert as hb
from . import jacobi as jc
from . import measures as ms
from . import stieltjes as st
from .config import GridSpec, RunConfig, build_config, parse_float_list, read_config_file
from .errors import ConfigError, CutError, ParameterError, StieltjesLabError, SupportError
from .suites import SUITE_NAMES, run_suite, sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TABLE_HEADER = ("z_re", "z_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual")
EVAL_FIELDS = ("z_re", "z_im", "value_re", "value_im", "err", "method")
HUMBERT_FIELDS = (
    "y_re",
    "y_im",
    "root_re",
    "root_im",
    "trinomial_residual",
    "series_residual",
    "identity_residual",
)
SUPPORT_FLAG = "support_error"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; route through main() so the status stays 2
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def fmt(x) -> str:
    """17 significant digits in scientific notation; strings pass through."""
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.16e}"


def _emit(rows: list, fields, cfg: RunConfig, out=None):
    """Write ``rows`` (dicts) as CSV or JSON to ``cfg.output`` or ``out``."""
    buf = io.StringIO(newline="")
    if cfg.format == "json":
        clean = [{k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in r.items()} for r in rows]
        json.dump(clean, buf, indent=1)
        buf.write("\n")
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([fmt(r[f]) for f in fields])
    text = buf.getvalue()
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        (out or sys.stdout).write(text)


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot read {text!r} as a complex number") from exc


def _measure_id(text: str):
    name, _, rest = text.strip().partition(":")
    kw = {}
    for item in filter(None, (t.strip() for t in rest.split(","))):
        k, sep, v = item.partition("=")
        if not sep:
            raise UsageError(f"bad measure parameter {item!r} in {text!r}")
        try:
            kw[k.strip()] = float(v)
        except ValueError as exc:
            raise UsageError(f"bad value for {k!r} in {text!r}") from exc
    return name, kw


_SIMPLE = {
    "wigner": (ms.wigner, ms.BetaParams(0.5, 0.5)),
    "arcsine": (ms.arcsine, ms.BetaParams(-0.5, -0.5)),
    "uniform": (lambda: ms.beta_measure(ms.BetaParams(0.0, 0.0)), ms.BetaParams(0.0, 0.0)),
    "bernoulli": (ms.bernoulli_sym, None),
    "free-poisson": (ms.free_poisson_quarter, None),
}
_BY_LAMBDA = {
    "kappa": ms.kappa,
    "bernoulli-power": ms.bernoulli_power_measure,
    "kappa-product": ms.kappa_convolution_density,
}
MEASURES = tuple(_SIMPLE) + ("beta",) + tuple(_BY_LAMBDA)


def parse_measure(text: str, lam: float = 1.0):
    """Measure and (when known) closed-form transform from a measure id.

    The id is ``name`` or ``name:key=value,...``: wigner, arcsine,
    bernoulli, free-poisson, uniform, beta:gamma=..,beta=..,
    kappa:lambda=.., bernoulli-power:lambda=.., kappa-product:lambda=...
    The closed form is ``None`` when no formula is implemented for the
    requested ``lam``.
    """
    name, kw = _measure_id(text)

    def need(*keys):
        if set(kw) != set(keys):
            raise UsageError(f"measure {name!r} takes parameters {', '.join(keys) or 'none'}, got {sorted(kw)}")
        return [kw[k] for k in keys]

    bp = closed = None
    if name in _SIMPLE:
        need()
        make, bp = _SIMPLE[name]
        m = make()
    elif name == "beta":
        bp = ms.BetaParams(*need("gamma", "beta"))
        m = ms.beta_measure(bp)
    elif name in _BY_LAMBDA:
        (mlam,) = need("lambda")
        m = _BY_LAMBDA[name](mlam)
        if name == "bernoulli-power" and mlam == lam:
            closed = lambda z: st.stieltjes_bernoulli(z) ** lam
        elif name == "kappa-product" and mlam == lam:
            closed = lambda z: st.free_poisson_closed(lam, z)
    else:
        raise UsageError(f"unknown measure {name!r}; choose from {', '.join(MEASURES)}")
    if bp is not None:
        closed = lambda z: st.gst_beta_closed(lam, bp, z).value
    elif name == "bernoulli":
        closed = lambda z: 0.5 * ((z + 1.0) ** -lam + (z - 1.0) ** -lam)
    elif name == "free-poisson":
        closed = lambda z: st.free_poisson_closed(lam, z)
    return m, closed


# ---------------------------------------------------------------- table identities


def _quad(lam, m, pol):
    return lambda z: st.gst_quadrature(lam, m, z, pol).value


def _identity_sides(args, cfg: RunConfig):
    """``(f(z) -> (lhs, rhs), nominal tolerance)`` for ``table --identity``."""
    lam, k, p = args.lam, args.k, args.p
    pol = cfg.policy()
    name = args.identity
    if name in ("gst1", "gst2"):
        bp = ms.BetaParams(args.gamma, args.beta)
        closed = st.gst_beta_closed if name == "gst1" else st.gst_beta_closed_alt
        q = _quad(lam, ms.beta_measure(bp), pol)
        return (lambda z: (closed(lam, bp, z).value, q(z))), 1e-8
    if name == "examp1":
        q = _quad(lam, ms.beta_measure(ms.BetaParams(lam - 0.5, lam - 0.5)), pol)
        return (lambda z: (q(z), st.examp1_closed(lam, z))), 1e-8
    if name == "examp2":
        if not lam > 1:
            raise UsageError("examp2 needs --lambda > 1")
        q = _quad(lam, ms.beta_measure(ms.BetaParams(lam - 1.5, lam - 1.5)), pol)
        return (lambda z: (q(z), st.examp2_closed(lam, z))), 1e-8
    if name == "prop1":
        g = lam - 0.5 - k
        q = _quad(lam, ms.beta_measure(ms.BetaParams(g, g)), pol)
        return (lambda z: (st.prop1_closed(lam, k, z).value, q(z))), 1e-8
    if name == "prop2":
        q = _quad(lam, ms.beta_measure(st.prop2_params(lam, k, args.swapped)), pol)
        return (lambda z: (st.prop2_closed(lam, k, z, args.swapped).value, q(z))), 1e-8
    if name == "bernoulli":
        q = _quad(lam, ms.bernoulli_power_measure(lam), pol)
        return (lambda z: (q(z), st.stieltjes_bernoulli(z) ** lam)), 1e-8
    if name == "shrinkage":
        if not 0 < p < 1:
            raise UsageError("shrinkage needs 0 < --p < 1")
        q = _quad(lam, ms.beta_measure(ms.BetaParams(p * lam - 1.0, (1.0 - p) * lam - 1.0)), pol)
        return (lambda z: (q(z), st.shrinkage_closed(lam, p, z))), 1e-9
    if name == "free-poisson":
        q = _quad(lam, ms.kappa_convolution_density(lam), pol)
        return (lambda z: (q(z), st.free_poisson_closed(lam, z))), 1e-8
    if name == "wigner-functional":

        def wf(z):
            g = st.stieltjes_wigner(z)
            return 1.0 + g * g / 4.0, z * g

        return wf, 1e-12
    if name == "humbert-sector":

        def sector(y):
            if not abs(4.0 * y**3) > 1.0:
                return complex(math.nan, math.nan), complex(math.nan, math.nan)
            return hb.root_via_2f1_d2(y, check=False), hb.root_select(2, y).z

        return sector, 1e-10
    raise UsageError(f"unknown identity {name!r}")


IDENTITIES = (
    "gst1",
    "gst2",
    "examp1",
    "examp2",
    "prop1",
    "prop2",
    "bernoulli",
    "shrinkage",
    "free-poisson",
    "wigner-functional",
    "humbert-sector",
)


# ---------------------------------------------------------------- commands


def _grid_points(args, cfg: RunConfig, keep_cut: bool = False) -> list:
    if getattr(args, "z", None):
        pts = [parse_complex(t) for t in args.z]
    else:
        pts = GridSpec(cfg.re_min, cfg.re_max, cfg.step, cfg.im).points()
    if keep_cut:
        return pts
    return list(st.EvalGrid(tuple(pts)).points)


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.suite not in SUITE_NAMES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITE_NAMES)}")
    rows = run_suite(args.suite, cfg)
    for r in rows:
        print(r, file=sys.stderr)
    failed = sum(not r.passed for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} checks passed", file=sys.stderr)
    if cfg.output:
        _emit([r.to_dict() for r in rows], rows[0].FIELDS if rows else (), cfg)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_eval(args, cfg: RunConfig) -> int:
    m, closed = parse_measure(args.measure, args.lam)
    pol = cfg.policy()
    pts = _grid_points(args, cfg, keep_cut=True)

    def one(z):
        out = []
        if closed is not None:
            try:
                out.append(st.GstResult(complex(closed(z)), 0.0, st.CLOSED_FORM))
            except (CutError, ParameterError, ZeroDivisionError):
                pass
        try:
            out.append(st.gst_quadrature(args.lam, m, z, pol))
        except SupportError:
            out.append(None)
        return out

    rows = []
    for z, results in zip(pts, sweep(one, pts, cfg)):
        for r in results:
            if r is None:
                rows.append({"z_re": z.real, "z_im": z.imag, "value_re": math.nan,
                             "value_im": math.nan, "err": math.nan, "method": SUPPORT_FLAG})
            else:
                rows.append(r.to_dict(z))
    _emit(rows, EVAL_FIELDS, cfg)
    return EXIT_OK


def cmd_table(args, cfg: RunConfig) -> int:
    fn, nominal = _identity_sides(args, cfg)
    pts = _grid_points(args, cfg, keep_cut=args.identity == "humbert-sector")

    def one(z):
        try:
            lhs, rhs = (complex(v) for v in fn(z))
        except StieltjesLabError:
            lhs = rhs = complex(math.nan, math.nan)
        return lhs, rhs

    rows = []
    for z, (lhs, rhs) in zip(pts, sweep(one, pts, cfg)):
        rows.append({"z_re": z.real, "z_im": z.imag, "lhs_re": lhs.real, "lhs_im": lhs.imag,
                     "rhs_re": rhs.real, "rhs_im": rhs.imag, "residual": abs(lhs - rhs)})
    _emit(rows, TABLE_HEADER, cfg)
    tol = cfg.scaled(nominal)
    # NaN marks points where the identity does not apply
    bad = [r for r in rows if r["residual"] > tol]
    if bad:
        print(f"{len(bad)} of {len(rows)} points exceed tolerance {tol:.1e}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_expand(args, cfg: RunConfig) -> int:
    z = parse_complex(args.z_point)
    c = jc.kernel_coeffs(args.lam, ms.BetaParams(args.gamma, args.beta), z, args.n_max)
    rows = [{"n": n, "coeff_re": v.real, "coeff_im": v.imag} for n, v in enumerate(c)]
    _emit(rows, ("n", "coeff_re", "coeff_im"), cfg)
    return EXIT_OK


def cmd_humbert(args, cfg: RunConfig) -> int:
    d, alpha = args.d, args.alpha
    if d < 1:
        raise UsageError("--d must be a positive integer")
    ys = GridSpec.parse(args.y_grid).points() if args.y_grid else _grid_points(args, cfg, keep_cut=True)
    pol = cfg.policy()

    def one(y):
        nan = math.nan
        try:
            root = hb.root_select(d, y)
        except StieltjesLabError:
            return complex(nan, nan), nan, nan, nan
        series = ident = nan
        try:
            if d == 2 and abs(4.0 * y**3) > 1.0 and not args.literal:
                series = abs(hb.root_via_2f1_d2(y, check=False) - root.z)
            elif d != 2 or args.literal:
                series = abs(hb.root_via_series(d, y, args.literal) - root.z)
            if d == 2 and y.imag > 0 and abs(4.0 * y**3) > 1.0:
                ident = hb.gamma0_gst_identity_d2(alpha, y, pol)
            elif d == 1:
                ident = abs((2.0 * root.z) ** alpha - st.stieltjes_wigner(y) ** alpha)
        except StieltjesLabError:
            pass
        return root.z, root.residual, series, ident

    rows = []
    for y, (z, tri, series, ident) in zip(ys, sweep(one, ys, cfg)):
        rows.append({"y_re": y.real, "y_im": y.imag, "root_re": z.real, "root_im": z.imag,
                     "trinomial_residual": tri, "series_residual": series, "identity_residual": ident})
    _emit(rows, HUMBERT_FIELDS, cfg)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--config", help="key = value file; flags override it")
    g.add_argument("--tolerance", type=float, help="base tolerance (default 1e-8)")
    g.add_argument("--grid", help="grid as re=LO:HI:STEP;im=A,B,...")
    g.add_argument("--re-min", type=float)
    g.add_argument("--re-max", type=float)
    g.add_argument("--step", type=float)
    g.add_argument("--im", help="comma-separated imaginary parts")
    g.add_argument("--budget", type=int, help="quadrature abscissae budget")
    g.add_argument("--output", "-o", help="output file (default stdout)")
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--threads", type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="stieltjes-lab", description="Generalized Stieltjes transforms: checks and tables.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(SUITE_NAMES)}")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", parents=[common], help="evaluate a transform")
    e.add_argument("--measure", required=True, help="e.g. wigner or beta:gamma=0.5,beta=1.5")
    e.add_argument("--lambda", dest="lam", type=float, default=1.0)
    e.add_argument("--z", action="append", help="evaluation point; repeatable (default: the grid)")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("table", parents=[common], help="grid table of one identity")
    t.add_argument("--identity", required=True, choices=IDENTITIES)
    t.add_argument("--lambda", dest="lam", type=float, default=1.0)
    t.add_argument("--k", type=int, default=1)
    t.add_argument("--p", type=float, default=0.5)
    t.add_argument("--gamma", type=float, default=0.0)
    t.add_argument("--beta", type=float, default=0.0)
    t.add_argument("--swapped", action="store_true")
    t.add_argument("--z", action="append", help="evaluation point; repeatable (default: the grid)")
    t.set_defaults(func=cmd_table)

    x = sub.add_parser("expand", parents=[common], help="Jacobi coefficients of (z - x)^-lambda")
    x.add_argument("--lambda", dest="lam", type=float, default=1.0)
    x.add_argument("--gamma", type=float, default=0.0)
    x.add_argument("--beta", type=float, default=0.0)
    x.add_argument("--z", dest="z_point", required=True)
    x.add_argument("--n-max", type=int, default=40)
    x.set_defaults(func=cmd_expand)

    h = sub.add_parser("humbert", parents=[common], help="trinomial root residual map")
    h.add_argument("--d", type=int, default=2)
    h.add_argument("--alpha", type=float, default=1.0)
    h.add_argument("--y-grid", help="grid as re=LO:HI:STEP;im=A,B,... (default: the run grid)")
    h.add_argument("--literal", action="store_true", help="use the (-1)**d series argument")
    h.set_defaults(func=cmd_humbert)
    return parser


def config_from_args(args) -> RunConfig:
    file_values = read_config_file(args.config) if args.config else {}
    over = {
        "tolerance": args.tolerance,
        "re_min": args.re_min,
        "re_max": args.re_max,
        "step": args.step,
        "im": None,
        "budget": args.budget,
        "output": args.output,
        "format": args.format,
        "threads": args.threads,
    }
    if args.im is not None:
        try:
            over["im"] = parse_float_list(args.im)
        except ValueError as exc:
            raise ConfigError(f"bad --im list {args.im!r}") from exc
    if args.grid is not None:
        g = GridSpec.parse(args.grid)
        over.update(re_min=g.re_min, re_max=g.re_max, step=g.step, im=g.im)
    return build_config(file_values, over)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        return args.func(args, cfg)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, CutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
