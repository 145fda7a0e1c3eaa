"""Command line front end.

    python -m quartics invariants --family C3 --r 2 --s 3
    python -m quartics bitangents --family C9 --format text
    python -m quartics syzygy --family C9 --indices 0 1 2
    python -m quartics detrep-c6 --r 1/8
    python -m quartics parse --expr "x^2 - 2/3*x*y"

Exit status is 0 on success, 2 for bad input (including degenerate
curves) and 3 when a numeric search fails to verify its answer.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bitangent import BitangentError, find_bitangents, syzygy_test
from .detrep import DegenerateCurveError, DetRepError, solve_c6
from .dixmier import TernaryQuartic, dixmier_invariants, make_curve
from .parser import ParseError, format_poly, parse_equation

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class InputError(Exception):
    pass


def _rational(text, allow_float, warnings, name):
    """Parse ``p/q`` or an integer exactly; decimals only when ``allow_float``."""
    text = text.strip()
    try:
        return Fraction(text) if "/" in text or text.lstrip("+-").isdigit() else _decimal(
            text, allow_float, warnings, name)
    except (ValueError, ZeroDivisionError) as err:
        raise InputError(f"bad value for --{name}: {text!r} ({err})") from None


def _decimal(text, allow_float, warnings, name):
    value = Fraction(text)  # raises ValueError for junk
    if not allow_float:
        raise InputError(f"--{name} must be an exact rational (p/q), got {text!r}")
    warnings.append(f"--{name}={text} is a decimal; it was read as the exact rational {value}")
    return value


def _read_expression(args):
    text = args.expr
    if text == "-":
        text = sys.stdin.read()
    return text


def _curve(args, allow_float=False, warnings=None):
    warnings = [] if warnings is None else warnings
    sources = [s for s in (args.family, args.expr, args.file) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --family, --expr, --file")
    if args.family is not None:
        r = _rational(args.r, allow_float, warnings, "r") if args.r is not None else None
        s = _rational(args.s, allow_float, warnings, "s") if args.s is not None else None
        family = args.family.upper()
        if family == "C3" and (r is None) != (s is None):
            raise InputError("C3 needs both --r and --s (or neither for symbolic output)")
        if family == "C6" and s is not None:
            raise InputError("C6 fixes s = 1 - r; do not pass --s")
        return make_curve(family, r, s, convention=args.convention)
    text = _read_expression(args) if args.expr is not None else _read_file(args.file)
    poly = parse_equation(text.strip())
    return TernaryQuartic(poly, convention="raw")


def _read_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from None


def _emit(payload, fmt, text_lines):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _fmt_complex(v):
    v = complex(v)
    return f"{v.real:.12g}{v.imag:+.12g}i"


def cmd_invariants(args):
    curve = _curve(args, allow_float=False)
    inv = dixmier_invariants(curve)
    data = {k: format_poly(p) for k, p in inv.as_dict().items()}
    _emit(data, args.format, [f"{k} = {v}" for k, v in data.items()])
    return EXIT_OK


def _bitangent_list(args, warnings):
    curve = _curve(args, allow_float=True, warnings=warnings)
    if curve.params:
        raise InputError(f"bitangents need numeric parameters; free: {', '.join(curve.params)}")
    return curve, find_bitangents(curve, tol=args.tol, seed=args.seed)


def cmd_bitangents(args):
    warnings = []
    curve, recs = _bitangent_list(args, warnings)
    data = {"count": len(recs), "bitangents": [r.to_dict() for r in recs], "warnings": warnings}
    lines = [f"{len(recs)} bitangents"]
    for i, rec in enumerate(recs):
        coords = ", ".join(_fmt_complex(v) for v in rec.line.coords)
        lines.append(f"[{i:2d}] ({coords})  residual {rec.residual:.2e}{'  exact' if rec.exact else ''}")
    lines.extend(f"warning: {w}" for w in warnings)
    _emit(data, args.format, lines)
    return EXIT_OK


def cmd_syzygy(args):
    warnings = []
    curve, recs = _bitangent_list(args, warnings)
    idx = args.indices
    if len(set(idx)) != 3:
        raise InputError("--indices needs three different indices")
    if any(i < 0 or i >= len(recs) for i in idx):
        raise InputError(f"indices must lie in 0..{len(recs) - 1}")
    verdict = syzygy_test(curve, [recs[i] for i in idx])
    data = dict(verdict.to_dict(), indices=list(idx), warnings=warnings)
    lines = [f"{verdict.classification} (|det| = {abs(verdict.determinant):.3e})"]
    if verdict.repeated_points:
        lines.append("note: a bitangent in the triple touches at a single point counted twice")
    lines.extend(f"warning: {w}" for w in warnings)
    _emit(data, args.format, lines)
    return EXIT_OK


def cmd_detrep(args):
    r = _rational(args.r, False, [], "r")
    sol = solve_c6(r, tol=args.tol)
    data = sol.to_dict()
    data["r"] = str(r)
    lines = [f"r = {r}, branch {sol.branch}, residual {sol.residual:.2e}", "C ="]
    for row in sol.C.entries:
        lines.append("  " + "  ".join(_fmt_complex(complex(v)) for v in row))
    _emit(data, args.format, lines)
    return EXIT_OK


def cmd_parse(args):
    if args.expr is None:
        raise InputError("parse needs --expr")
    poly = parse_equation(_read_expression(args).strip())
    data = {"poly": format_poly(poly), "vars": list(poly.vars), "degree": poly.total_degree()}
    _emit(data, args.format, [data["poly"]])
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="quartics", description="Plane quartic toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, curve=True):
        if curve:
            p.add_argument("--family", help="C3, C6 or C9")
            p.add_argument("--r", help="parameter r (integer or p/q)")
            p.add_argument("--s", help="parameter s (integer or p/q)")
            p.add_argument("--convention", choices=["z", "y"], default="z",
                           help="homogenizing variable of the family model")
            p.add_argument("--file", help="read the curve expression from a file")
        p.add_argument("--expr", help="polynomial or 'lhs = rhs' equation; '-' reads stdin")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--seed", type=int, default=0)

    common(sub.add_parser("invariants", help="Dixmier invariants I3..I18"))
    common(sub.add_parser("bitangents", help="the 28 bitangents"))
    syz = sub.add_parser("syzygy", help="classify a triple of bitangents")
    common(syz)
    syz.add_argument("--indices", type=int, nargs=3, required=True,
                     help="three 0-based positions in the sorted bitangent list")
    det = sub.add_parser("detrep-c6", help="symmetric determinantal representation of C6")
    det.add_argument("--r", required=True)
    det.add_argument("--format", choices=["json", "text"], default="json")
    det.add_argument("--tol", type=float, default=1e-8)
    det.add_argument("--seed", type=int, default=0)
    common(sub.add_parser("parse", help="normalize an expression"), curve=False)
    return parser


_COMMANDS = {
    "invariants": cmd_invariants,
    "bitangents": cmd_bitangents,
    "syzygy": cmd_syzygy,
    "detrep-c6": cmd_detrep,
    "parse": cmd_parse,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (InputError, ParseError, DegenerateCurveError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (BitangentError, DetRepError) as err:
        print(f"numeric failure: {err}", file=sys.stderr)
        diag = getattr(err, "diagnostics", None)
        if diag:
            print(json.dumps(diag, indent=2, sort_keys=True), file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
