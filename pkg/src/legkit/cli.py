"""Command-line front end: ``legkit {poly,shifted,roots,quad,expand,bvp,beukers}``.

Exit codes: 0 success, 2 usage error, 3 input-file error, 4 convergence error.
"""
import argparse
import math
import sys
from fractions import Fraction

from . import beukers, legendre, quadrature, series, shifted, sphere
from .errors import ConvergenceError, InputFileError, LegkitError
from .functions import parse_function
from .serialize import dumps, format_rational, rows_to_csv

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CONVERGENCE = 4


class UsageError(Exception):
    pass


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _pos_int(text):
    v = _nonneg_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _number(text):
    """Float or exact rational such as 1/3."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _poly_payload(basis, n, coeffs, scale=1, interval=None):
    out = {"basis": basis, "n": n}
    if interval is not None:
        out["interval"] = [format_rational(interval[0]), format_rational(interval[1])]
    if scale != 1:
        out["scale"] = scale
    out["coeffs"] = [format_rational(c) for c in coeffs]
    return out


def _poly_csv(coeffs):
    return rows_to_csv(("power", "coeff"), [(k, format_rational(c)) for k, c in enumerate(coeffs)])


def cmd_poly(args):
    if args.basis == "shifted":
        coeffs = list(shifted.shifted_coeffs(args.n).coeffs)
        scale = 1
    else:
        p = legendre.coeffs_explicit(args.n)
        scale = 1
        if args.scale_2adic:
            scale = 2 ** legendre.two_adic_scaling(args.n)
            p = p * scale
        coeffs = list(p.coeffs)
    if args.format == "csv":
        return _poly_csv(coeffs)
    return dumps(_poly_payload(args.basis, args.n, coeffs, scale))


def cmd_shifted(args):
    if args.a is None and args.b is None:
        coeffs = list(shifted.shifted_coeffs(args.n).coeffs)
        interval = None
    elif args.a is None or args.b is None:
        raise UsageError("give both --a and --b, or neither")
    else:
        a, b = Fraction(args.a), Fraction(args.b)
        coeffs = list(shifted.interval_poly(args.n, (a, b)).coeffs)
        interval = (a, b)
    if args.format == "csv":
        return _poly_csv(coeffs)
    return dumps(_poly_payload("shifted" if interval is None else "mapped", args.n, coeffs, interval=interval))


def cmd_roots(args):
    roots = quadrature.legendre_roots(args.n, args.tol)
    if args.format == "csv":
        return rows_to_csv(("i", "root"), [(i, float(r)) for i, r in enumerate(roots)])
    return dumps({"n": args.n, "roots": [float(r) for r in roots]})


def cmd_quad(args):
    rule = quadrature.build_rule(args.n, args.a, args.b)
    f = parse_function(args.f, (args.a, args.b))
    value = quadrature.integrate(rule, f)
    if args.format == "csv":
        return rows_to_csv(("x", "w"), zip(rule.points, rule.scaled_weights))
    payload = rule.to_json()
    payload["integral"] = value
    return dumps(payload)


def cmd_expand(args):
    domain = (args.a, args.b)
    f = parse_function(args.f, domain)
    s = series.project(f, args.N, quad_n=args.quad_n, basis=args.basis)
    if args.format == "csv" or args.curve_out:
        curve = rows_to_csv(("x", "f", "f_approx"), series.sample_curve(s, args.grid, f))
        if args.format == "csv":
            return curve
        _write(args.curve_out, curve)
    payload = s.to_json()
    payload["N"] = args.N
    return dumps(payload)


def cmd_bvp(args):
    domain = (-1.0, 1.0) if args.variable == "x" else (0.0, math.pi)
    F = parse_function(args.boundary, domain)
    bd = sphere.BoundaryData(args.a, F, args.variable)
    sol = sphere.solve_exterior(bd, args.N, quad_n=args.quad_n)
    r_max = args.r_max if args.r_max is not None else 4.0 * args.a
    if args.format == "csv" or args.grid_out:
        grid = sphere.grid_to_csv(sphere.emit_field_grid(sol, r_max, args.nr, args.ntheta, args.normalize))
        if args.format == "csv":
            return grid
        _write(args.grid_out, grid)
    return dumps(sol.to_json())


def cmd_beukers(args):
    f = beukers.smooth_builtin(args.f)
    if f.order < args.n:
        raise UsageError(f"{args.f} has derivatives registered only up to order {f.order}")
    rule = quadrature.build_rule(args.quad_n, 0.0, 1.0)
    rep = beukers.report(args.n, f, rule)
    if args.format == "csv":
        return rows_to_csv(tuple(rep), [tuple(rep.values())])
    return dumps(rep)


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputFileError(f"{path}: {exc}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", default="-", help="output path (default: stdout)")

    parser = argparse.ArgumentParser(prog="legkit", description="Legendre polynomial toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="exact coefficients of P_n or P~_n")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--basis", choices=("legendre", "shifted"), default="legendre")
    p.add_argument("--scale-2adic", action="store_true", help="multiply P_n by 2^nu_2(n!)")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("shifted", parents=[common], help="shifted polynomial, optionally mapped to [a, b]")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--a", default=None, help="left end (exact rational allowed)")
    p.add_argument("--b", default=None, help="right end (exact rational allowed)")
    p.set_defaults(func=cmd_shifted)

    p = sub.add_parser("roots", parents=[common], help="roots of P_n")
    p.add_argument("--n", type=_pos_int, required=True)
    p.add_argument("--tol", type=float, default=quadrature.DEFAULT_TOL)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("quad", parents=[common], help="Gauss-Legendre rule and integral")
    p.add_argument("--n", type=_pos_int, required=True)
    p.add_argument("--a", type=_number, default=-1.0)
    p.add_argument("--b", type=_number, default=1.0)
    p.add_argument("--f", default="1", help="builtin name or CSV sample file (x,y)")
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("expand", parents=[common], help="Fourier-Legendre coefficients")
    p.add_argument("--f", required=True)
    p.add_argument("--N", type=_nonneg_int, required=True)
    p.add_argument("--a", type=_number, default=-1.0)
    p.add_argument("--b", type=_number, default=1.0)
    p.add_argument("--basis", choices=series.BASES, default=None)
    p.add_argument("--quad-n", type=_pos_int, default=None)
    p.add_argument("--grid", type=_pos_int, default=101, help="curve points for CSV output")
    p.add_argument("--curve-out", default=None, help="also write the x,f,f_approx curve here")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("bvp", parents=[common], help="exterior Laplace problem on a sphere")
    p.add_argument("--boundary", required=True, help="F(theta) builtin or CSV samples")
    p.add_argument("--variable", choices=("theta", "x"), default="theta")
    p.add_argument("--a", type=_number, default=1.0)
    p.add_argument("--N", type=_nonneg_int, default=8)
    p.add_argument("--quad-n", type=_pos_int, default=None)
    p.add_argument("--r-max", type=_number, default=None)
    p.add_argument("--nr", type=_pos_int, default=16)
    p.add_argument("--ntheta", type=_pos_int, default=16)
    p.add_argument("--normalize", action="store_true", help="report r in units of a")
    p.add_argument("--grid-out", default=None, help="also write the r,theta,V grid here")
    p.set_defaults(func=cmd_bvp)

    p = sub.add_parser("beukers", parents=[common], help="integration-by-parts report")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--f", required=True, help=f"one of {', '.join(beukers.SMOOTH_BUILTINS)}")
    p.add_argument("--quad-n", type=_pos_int, default=beukers.DEFAULT_QUAD_N)
    p.set_defaults(func=cmd_beukers)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
        if not text.endswith("\n"):
            text += "\n"
        _write(args.output, text)
    except InputFileError as exc:
        print(f"legkit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvergenceError as exc:
        print(f"legkit: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (UsageError, LegkitError, ValueError) as exc:
        print(f"legkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
