"""Command-line surface: point evaluation, suite execution and sweep tables.

Exit codes
----------
0  success
2  usage error (bad flags, malformed range, unknown suite or function)
3  domain error (a precondition of the evaluated function is violated)
4  verification failure (reports are still written)

Complex parameters accept ``--x`` (a Python complex literal), ``--x-re/--x-im``
or the branched form ``--x-mod/--x-arg`` with the argument in radians and never
reduced, so ``--z-arg 6.2832`` is a point on the next sheet.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import sys

import numpy as np

from .context import BranchedComplex, make_context
from .errors import QResumError, UnknownSuite
from .laplace import TransformKind
from .qfuncs import e_q, p_q, theta_q
from .report import to_complex
from .series import PhiParams, phi, psi, stieltjes_wigert
from .stokes import pqc, pqd
from .uq import METHODS, cf_convergent, cf_gap, default_method, uq, y2, y_infinity

__all__ = ["main", "build_parser", "cmd_eval", "cmd_verify", "cmd_table", "FUNCTIONS"]

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_FAIL = 0, 2, 3, 4

# complex-valued parameters and their attribute stems
PARAMS = ("z", "a", "b", "lambda", "x")
PARTS = ("re", "im", "mod", "arg")
SWEEPABLE = tuple(f"{p}-{part}" for p in ("z", "lambda") for part in PARTS) + ("a", "b", "x")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parameters


def _attr(name):
    return name.replace("-", "_").replace("lambda", "lam")


def _complex_literal(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _complex_list(text):
    return [_complex_literal(t) for t in text.split(",") if t.strip()] if text else []


def resolve(args, name, required=True):
    """Value of a complex parameter from whichever form was given.

    Returns a :class:`BranchedComplex` for the polar form, otherwise a complex.
    """
    stem = _attr(name)
    plain = getattr(args, stem, None)
    re, im, mod, arg = (getattr(args, f"{stem}_{p}", None) for p in PARTS)
    cart = re is not None or im is not None
    polar = mod is not None or arg is not None
    if sum([plain is not None, cart, polar]) > 1:
        raise UsageError(f"give --{name} in one form only (plain, -re/-im or -mod/-arg)")
    if polar:
        if mod is None:
            raise UsageError(f"--{name}-arg needs --{name}-mod")
        return BranchedComplex(mod, arg or 0.0)
    if cart:
        return complex(re or 0.0, im or 0.0)
    if plain is not None:
        return plain
    if required:
        raise UsageError(f"missing parameter --{name} (or --{name}-re/--{name}-im, --{name}-mod/--{name}-arg)")
    return None


def _point_record(args, names):
    out = {}
    for n in names:
        v = resolve(args, n, required=False)
        if isinstance(v, BranchedComplex):
            out[n] = {"mod": float(v.modulus), "arg": float(v.arg)}
        elif v is not None:
            out[n] = {"re": v.real, "im": v.imag}
    return out


def _kind(args, lam_required=True):
    kind = args.kind or "E"
    if str(kind).lower() in ("lambda", "discrete"):
        lam = resolve(args, "lambda", required=lam_required)
        return TransformKind.parse("lambda", lam)
    return TransformKind.parse(kind)


def _n(args):
    if args.n is None:
        raise UsageError("missing --n")
    return args.n


# ---------------------------------------------------------------- functions


def _f_uq(args, ctx):
    kind = _kind(args)
    a, b, z = (resolve(args, n) for n in ("a", "b", "z"))
    a, b = complex(a), complex(b)
    method = args.method or default_method(a, b, BranchedComplex.promote(z))
    return uq(kind, a, b, z, ctx, method=method), {"method": method, "kind": kind.label}


def _f_y2(args, ctx):
    kind = _kind(args)
    if kind.kind == "lambda":
        raise UsageError("y2 is defined for --kind E or theta")
    a, b, z = (resolve(args, n) for n in ("a", "b", "z"))
    return y2(kind.kind, complex(a), complex(b), z, ctx, form=args.form or 2), {"form": args.form or 2}


def _f_yinf(which):
    def f(args, ctx):
        a, b, z = (resolve(args, n) for n in ("a", "b", "z"))
        return y_infinity(which, complex(a), complex(b), z, ctx), {}

    return f


def _f_single(fn):
    def f(args, ctx):
        return fn(resolve(args, "z"), ctx), {}

    return f


def _f_pqc(args, ctx):
    method = args.method or "series"
    return pqc(resolve(args, "z"), ctx, method=method), {"method": method}


def _f_pqd(args, ctx):
    return pqd(resolve(args, "z"), resolve(args, "lambda"), ctx), {}


def _f_hyper(fn):
    def f(args, ctx):
        z = resolve(args, "z")
        return fn(PhiParams(list(args.upper), list(args.lower)), complex(z), ctx), {"r": len(args.upper), "s": len(args.lower)}

    return f


def _f_sw(args, ctx):
    x = resolve(args, "x", required=False)
    x = resolve(args, "z") if x is None else x
    return stieltjes_wigert(_n(args), complex(x), ctx), {"n": args.n}


def _f_cf(args, ctx):
    a, b, z = (complex(resolve(args, n)) for n in ("a", "b", "z"))
    if args.n is not None:
        return cf_convergent(args.n, a, b, z, ctx), {"n": args.n}
    g = cf_gap(a, b, z, ctx)
    diag = {"odd": _cplx(g.odd), "gap": float(g.gap), "depth": g.depth, "terminating": g.terminating}
    return g.even, diag


FUNCTIONS = {
    "uq": (_f_uq, ("a", "b", "z", "lambda")),
    "y2": (_f_y2, ("a", "b", "z")),
    "y3": (_f_yinf(3), ("a", "b", "z")),
    "y4": (_f_yinf(4), ("a", "b", "z")),
    "theta_q": (_f_single(theta_q), ("z",)),
    "e_q": (_f_single(e_q), ("z",)),
    "p_q": (_f_single(p_q), ("z",)),
    "pqc": (_f_pqc, ("z",)),
    "pqd": (_f_pqd, ("z", "lambda")),
    "phi": (_f_hyper(phi), ("z",)),
    "psi": (_f_hyper(psi), ("z",)),
    "sw": (_f_sw, ("x", "z")),
    "cf": (_f_cf, ("a", "b", "z")),
}


# ---------------------------------------------------------------- output


def _cplx(v):
    c = to_complex(v)
    return {"re": c.real, "im": c.imag}


def _clean(obj):
    """Replace non-finite floats by ``None`` so the JSON is strict."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def _dumps(obj):
    # repr floats: shortest string that round-trips, at most 17 significant digits
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def _emit(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _context(args):
    q = args.q
    if q is None:
        raise UsageError("missing --q")
    return make_context(q, eps=args.eps, precision=args.precision)


# ---------------------------------------------------------------- commands


def cmd_eval(args):
    """Evaluate one function at one point and print the value."""
    fn, names = FUNCTIONS[args.function]
    ctx = _context(args)
    value, diag = fn(args, ctx)
    c = to_complex(value)
    fmt = args.format or "text"
    if fmt == "json":
        rec = {"function": args.function, "q": ctx.q, "precision": ctx.precision, "point": _point_record(args, names), "value": _cplx(c)}
        if args.verbose:
            rec["diagnostics"] = diag
        _emit(_dumps(rec), args.out)
    elif fmt == "csv":
        _emit(f"re,im\n{c.real!r},{c.imag!r}\n", args.out)
    else:
        lines = [f"{c.real!r} {c.imag!r}"]
        if args.verbose:
            lines += [f"{k}: {v}" for k, v in diag.items()]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _grid_qs(args):
    if not args.grid:
        return [args.q] if args.q is not None else None
    try:
        grid = json.loads(args.grid)
    except json.JSONDecodeError:
        grid = None
    if isinstance(grid, dict) and isinstance(grid.get("q"), list):
        qs = grid["q"]
    else:
        text = args.grid.split("=", 1)[1] if args.grid.startswith("q=") else args.grid
        try:
            qs = [float(t) for t in text.split(",") if t.strip()]
        except ValueError:
            qs = []
    if not qs:
        raise UsageError(f"--grid must be q=v1,v2,... or a JSON object {{\"q\": [...]}}, got {args.grid!r}")
    return [float(q) for q in qs]


def cmd_verify(args):
    """Run one suite or all of them and write the JSON report array."""
    from .verify import SUITES, run_suite

    ids = list(SUITES) if args.all else [args.suite]
    for sid in ids:
        if sid not in SUITES:
            raise UnknownSuite(f"unknown suite {sid!r}; registered: {', '.join(SUITES)}")
    qs = _grid_qs(args)
    reports, ok = [], True
    for sid in ids:
        res = run_suite(sid, parallelism=args.parallelism, qs=qs, precision=args.precision, eps=args.eps)
        reports += [r.to_dict() for r in res.reports]
        ok &= res.passed
        s = res.summary()
        worst = max((v for v in s["worst_rel_err"].values()), default=0.0)
        print(f"{sid}: {s['pass']}/{s['total']} pass, worst rel err {worst:.3g}", file=sys.stderr)
        for note in res.notes:
            print(f"{sid}: note: {note}", file=sys.stderr)
    _emit(_dumps(reports), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def parse_range(text):
    """``lo:hi:n`` as ``n`` evenly spaced values including both ends."""
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"malformed range {text!r}; expected lo:hi:n") from None
    if n < 1 or not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError(f"range {text!r} must have n >= 1 and finite ends")
    return [lo] if n == 1 else [float(v) for v in np.linspace(lo, hi, n)]


def cmd_table(args):
    """Sweep one function over a grid and write plot-ready CSV."""
    fn, _ = FUNCTIONS[args.fn]
    sweeps = [(name, parse_range(getattr(args, _attr(name) + "_range"))) for name in SWEEPABLE if getattr(args, _attr(name) + "_range")]
    if not sweeps:
        raise UsageError("table needs at least one sweep, e.g. --z-mod-range lo:hi:n")
    ctx = _context(args)
    rows = []
    failed = 0
    for values in itertools.product(*(v for _, v in sweeps)):
        row_args = argparse.Namespace(**vars(args))
        for (name, _), v in zip(sweeps, values):
            setattr(row_args, _attr(name), v)
        try:
            c = to_complex(fn(row_args, ctx)[0])
        except (QResumError, ArithmeticError) as exc:
            failed += 1
            print(f"warning: {dict(zip((n for n, _ in sweeps), values))}: {exc}", file=sys.stderr)
            c = complex(math.nan, math.nan)
        rows.append([*values, c.real, c.imag])
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow([n.replace("-", "_") for n, _ in sweeps] + ["re", "im"])
        w.writerows([[repr(float(x)) for x in r] for r in rows])
    finally:
        if args.out:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _common(p):
    p.add_argument("--q", type=float, help="base q in (0, 1)")
    p.add_argument("--eps", type=float, help="target relative accuracy")
    p.add_argument("--precision", choices=("double", "extended"), help="arithmetic (default: $QRESUM_PRECISION or double)")
    p.add_argument("--format", choices=("json", "csv", "text"), help="output format")
    p.add_argument("--out", help="output path (default: stdout)")


def _function_params(p):
    for name in PARAMS:
        stem = _attr(name)
        p.add_argument(f"--{name}", dest=stem, type=_complex_literal, metavar="C")
        for part in PARTS:
            p.add_argument(f"--{name}-{part}", dest=f"{stem}_{part}", type=float, metavar="R")
    p.add_argument("--kind", choices=("E", "theta", "lambda"), help="transform for uq and y2")
    p.add_argument("--method", help=f"uq method {METHODS} or pqc method (series, integral)")
    p.add_argument("--n", type=int, help="degree for sw, depth for cf")
    p.add_argument("--form", type=int, choices=(1, 2), help="y2 representation")
    p.add_argument("--upper", type=_complex_list, default=[], help="comma separated upper parameters for phi/psi")
    p.add_argument("--lower", type=_complex_list, default=[], help="comma separated lower parameters for phi/psi")
    p.add_argument("--verbose", action="store_true", help="print diagnostics")


def build_parser():
    parser = argparse.ArgumentParser(prog="qresum", description="q-Borel-Laplace resummation: evaluation, verification and tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate a function at one point")
    pe.add_argument("function", choices=sorted(FUNCTIONS))
    _common(pe)
    _function_params(pe)
    pe.set_defaults(handler=cmd_eval)

    pv = sub.add_parser("verify", help="run verification suites")
    g = pv.add_mutually_exclusive_group(required=True)
    g.add_argument("--suite", help="suite id")
    g.add_argument("--all", action="store_true", help="run every registered suite")
    pv.add_argument("--grid", help="override the bases: q=v1,v2,... or JSON {\"q\": [...]}")
    pv.add_argument("--parallelism", "-j", type=int, default=1)
    _common(pv)
    pv.set_defaults(handler=cmd_verify)

    pt = sub.add_parser("table", help="sweep a function and write CSV")
    pt.add_argument("--fn", required=True, choices=sorted(FUNCTIONS))
    for name in SWEEPABLE:
        pt.add_argument(f"--{name}-range", dest=_attr(name) + "_range", metavar="LO:HI:N")
    _common(pt)
    _function_params(pt)
    pt.set_defaults(handler=cmd_table)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"qresum: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownSuite as exc:
        print(f"qresum: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (QResumError, ValueError, ArithmeticError) as exc:
        print(f"qresum: domain error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
