"""Command-line front end.

Exit codes: 0 success, 1 domain or verification failure, 2 usage or parse
error. JSON output is a single envelope object per invocation::

    {"schema_version": 1, "command": ..., "inputs": {...},
     "result": {...}, "diagnostics": [...]}

Polynomials are written in the expression grammar of ``quadode.parser``
(numbers, x, + - * / ^, parentheses); symbolic parameters are replaced with
``--subst name=value`` before parsing.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

import numpy as np

from . import catalog, elliptic
from .errors import NotInFamily, ParamDomainError, ParseError, QuadOdeError, UnknownEntry
from .family import Family, from_A, from_B, from_U, recognize_poly, recognize_radical
from .parser import RadicalProduct, parse_poly, print_canonical
from .polynomial import Poly, as_rational
from .solver import SolveConfig, solve_grid, verify

SCHEMA_VERSION = 1
TOL_ENV = "QUADODE_DEFAULT_TOL"
FALLBACK_TOL = 1e-8

ENVELOPE_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "command", "inputs", "result", "diagnostics"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {"type": "object"},
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
}

GRAMMAR_HELP = """\
expression grammar:
  numbers 3, 3/2, 0.25 (decimals are exact), the variable x,
  operators + - * / ^ (integer exponents, division by constants only),
  parentheses; radicals as "(<poly>)*sqrt(<poly>)" or "sqrt(<poly>)".
  Parameters such as g1 must be substituted: --subst g1=2.

exit codes: 0 ok, 1 domain/verification failure, 2 usage/parse error
"""


class UsageError(Exception):
    pass


def _jsonable(v):
    if isinstance(v, float):
        return v if math.isfinite(v) else None
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.generic):
        return _jsonable(v.item())
    return v


def envelope(command: str, inputs: dict, result: dict, diagnostics=()) -> str:
    env = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": _jsonable(inputs),
        "result": _jsonable(result),
        "diagnostics": list(diagnostics),
    }
    return json.dumps(env, ensure_ascii=False, allow_nan=False) + "\n"


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_subst(items) -> dict[str, Fraction]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not _NAME.match(name) or name in ("x", "sqrt"):
            raise UsageError(f"bad --subst {item!r}; expected name=rational with name other than x/sqrt")
        try:
            out[name] = as_rational(value)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational in --subst {item!r}") from None
    return out


def substitute(src: str, subst: dict[str, Fraction]) -> str:
    if not subst:
        return src

    def repl(m):
        word = m.group(0)
        return f"({subst[word]})" if word in subst else word

    return re.sub(r"[A-Za-z_][A-Za-z0-9_]*", repl, src)


def _poly(src: str, subst) -> Poly:
    return parse_poly(substitute(src, subst))


def family_from_args(args) -> Family:
    subst = parse_subst(args.subst)
    given = [k for k in ("u", "b", "a") if getattr(args, k) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --u, --b, --a")
    if args.u is not None:
        U = _poly(args.u, subst)
        if U.is_zero():
            raise UsageError("U must be nonzero")
        return from_U(U)
    if args.b is not None:
        B = _poly(args.b, subst)
        if B.is_zero():
            raise UsageError("B must be nonzero")
        return from_B(B)
    if args.b0 is None or args.b1 is None:
        raise UsageError("--a requires --b0 and --b1")
    try:
        b0 = as_rational(substitute(args.b0, subst))
        b1 = as_rational(substitute(args.b1, subst))
    except (ValueError, ZeroDivisionError):
        raise UsageError("--b0/--b1 must be rationals") from None
    A = _poly(args.a, subst)
    try:
        return from_A(A, b0, b1, try_sqrt=True)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def family_result(fam: Family) -> dict:
    rec = fam.to_record()
    rec["text"] = {
        "B": print_canonical(fam.B),
        "A": print_canonical(fam.A),
        "U": None if fam.U is None else print_canonical(fam.U),
    }
    return rec


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return FALLBACK_TOL
    try:
        val = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not val > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return val


def _grid(args) -> np.ndarray:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.n == 1 or args.from_ == args.to:
        return np.array([args.from_])
    return np.linspace(args.from_, args.to, args.n)


def _config(args, **base) -> SolveConfig:
    kw = dict(base)
    for key, attr in (("x0", "x0"), ("y0", "y0"), ("direction", "direction")):
        val = getattr(args, attr, None)
        if val is not None:
            kw[key] = val
    kw["quad_tol"] = args.quad_tol
    kw["inv_tol"] = args.inv_tol
    try:
        return SolveConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _inputs(args) -> dict:
    skip = {"func", "command"}
    return {k.rstrip("_"): v for k, v in vars(args).items() if k not in skip and v is not None}


def _error_record(exc: Exception) -> dict:
    rec = {"type": type(exc).__name__, "message": str(exc)}
    for attr in ("position", "t", "supremum", "y_reached", "target", "reason"):
        if hasattr(exc, attr):
            rec[attr] = getattr(exc, attr)
    if getattr(exc, "residual", None) is not None:
        rec["residual"] = [str(c) for c in exc.residual]
        rec["residual_text"] = print_canonical(exc.residual)
    return rec


def cmd_construct(args, out) -> int:
    fam = family_from_args(args)
    out.write(envelope("construct", _inputs(args), family_result(fam)))
    return 0


def cmd_recognize(args, out) -> int:
    subst = parse_subst(args.subst)
    try:
        if args.p is not None:
            if args.a is not None or args.b is not None:
                raise UsageError("give either --p or --a with --b")
            P = _poly(args.p, subst)
            if P.is_zero():
                raise UsageError("P must be nonzero")
            fam = recognize_poly(P)
        elif args.a is not None and args.b is not None:
            B = _poly(args.b, subst)
            if B.is_zero():
                raise UsageError("B must be nonzero")
            fam = recognize_radical(RadicalProduct(_poly(args.a, subst), B))
        else:
            raise UsageError("give --p, or --a together with --b")
    except NotInFamily as exc:
        out.write(envelope("recognize", _inputs(args), {"member": False, "error": _error_record(exc)}))
        return 1
    result = {"member": True, **family_result(fam)}
    out.write(envelope("recognize", _inputs(args), result))
    return 0


def _failure(command, args, exc, out) -> int:
    if getattr(args, "format", "json") == "csv":
        sys.stderr.write(f"error: {exc}\n")
    else:
        out.write(envelope(command, _inputs(args), {"error": _error_record(exc)}))
    return 1


def cmd_solve(args, out) -> int:
    fam = family_from_args(args)
    cfg = _config(args)
    tol = args.tol if args.tol is not None else default_tol()
    try:
        table = solve_grid(fam, cfg, _grid(args))
    except QuadOdeError as exc:
        return _failure("solve", args, exc, out)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    worst = max(abs(r[5]) for r in table.rows)
    diags = [] if worst <= tol else [f"max |residual| {worst:.3e} exceeds tol {tol:.3e}"]
    if args.format == "csv":
        out.write(table.to_csv())
    else:
        out.write(envelope("solve", _inputs(args), table.to_record(), diags))
    return 0


def cmd_verify(args, out) -> int:
    fam = family_from_args(args)
    cfg = _config(args)
    tol = args.tol if args.tol is not None else default_tol()
    try:
        report = verify(fam, cfg, _grid(args))
    except QuadOdeError as exc:
        return _failure("verify", args, exc, out)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = report.worst() <= tol
    result = {**report.to_record(), "tol": tol, "passed": ok}
    out.write(envelope("verify", _inputs(args), result))
    return 0 if ok else 1


def _params(items) -> dict[str, Fraction]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad --param {item!r}; expected name=rational")
        try:
            out[name.strip()] = as_rational(value)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational in --param {item!r}") from None
    return out


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        out.write(envelope("catalog list", _inputs(args), {"entries": catalog.list_entries()}))
        return 0
    if args.name is None:
        raise UsageError(f"catalog {args.action} needs an entry name")
    params = _params(args.param)
    try:
        entry = catalog.get_entry(args.name, params) if params else catalog.example_entry(args.name)
    except UnknownEntry as exc:
        raise UsageError(str(exc)) from None
    except ParamDomainError as exc:
        out.write(envelope(f"catalog {args.action}", _inputs(args), {"error": _error_record(exc)}))
        return 1
    if args.action == "show":
        out.write(envelope("catalog show", _inputs(args), entry.to_record()))
        return 0
    lo, hi = entry.default_interval
    if args.from_ is None:
        args.from_ = lo
    if args.to is None:
        args.to = hi
    tol = args.tol if args.tol is not None else default_tol()
    try:
        report = catalog.verify_entry(entry.name, entry.params, _grid(args))
    except QuadOdeError as exc:
        out.write(envelope("catalog verify", _inputs(args), {"error": _error_record(exc)}))
        return 1
    ok = report.worst() <= tol
    result = {"name": entry.name, **report.to_record(), "tol": tol, "passed": ok}
    out.write(envelope("catalog verify", _inputs(args), result))
    return 0 if ok else 1


def _float(text: str) -> float:
    try:
        return float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def cmd_elliptic(args, out) -> int:
    vals = [_float(v) for v in args.values]
    want = {"rf": 3, "F": 2, "K": 1}[args.function]
    if len(vals) != want:
        raise UsageError(f"elliptic {args.function} takes {want} argument(s)")
    try:
        if args.function == "rf":
            value = elliptic.carlson_rf(*vals)
        elif args.function == "F":
            value = elliptic.incomplete_f(elliptic.EllipticArgs(*vals))
        else:
            value = elliptic.complete_k_agm(vals[0])
    except QuadOdeError as exc:
        out.write(envelope("elliptic", _inputs(args), {"error": _error_record(exc)}))
        return 1
    out.write(envelope("elliptic", _inputs(args), {"function": args.function, "value": value}))
    return 0


def _family_flags(p):
    p.add_argument("--u", help="U(x); B = U^2")
    p.add_argument("--b", help="radicand B(x)")
    p.add_argument("--a", help="A(x); B is integrated from B'' = A - 2 (needs --b0 --b1)")
    p.add_argument("--b0", help="constant coefficient of B (= 2 C1)")
    p.add_argument("--b1", help="linear coefficient of B (= C2)")
    p.add_argument("--subst", action="append", metavar="NAME=RATIONAL", help="substitute a parameter (repeatable)")


def _solve_flags(p):
    p.add_argument("--x0", type=float, default=0.0, metavar="X", help="anchor abscissa (default 0)")
    p.add_argument("--y0", type=float, default=0.0, metavar="Y", help="anchor ordinate y(x0) (default 0)")
    p.add_argument("--direction", type=int, choices=(1, -1), default=1, help="branch y' = direction*sqrt(B)")
    p.add_argument("--from", dest="from_", type=float, required=True, metavar="X", help="first grid abscissa")
    p.add_argument("--to", type=float, required=True, metavar="X", help="last grid abscissa")
    p.add_argument("--n", type=int, default=101, help="number of grid points (default 101)")
    p.add_argument("--tol", type=float, default=None, help=f"acceptance tolerance (default {FALLBACK_TOL}, env {TOL_ENV})")
    p.add_argument("--quad-tol", type=float, default=1e-12, metavar="TOL", help="quadrature tolerance (default 1e-12)")
    p.add_argument("--inv-tol", type=float, default=1e-12, metavar="TOL", help="inversion tolerance on x (default 1e-12)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quadode",
        description="Construct, recognize, solve and verify solvable families of y''' + y' = Q(y), Q = A*sqrt(B)/2.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a family from U, B or A", epilog=GRAMMAR_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _family_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("recognize", help="test membership of P or of A*sqrt(B)", epilog=GRAMMAR_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--p", help="polynomial P = U*(2 + (U^2)'')")
    p.add_argument("--a", help="A of a radical product A*sqrt(B)")
    p.add_argument("--b", help="B of a radical product A*sqrt(B)")
    p.add_argument("--subst", action="append", metavar="NAME=RATIONAL")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("solve", help="tabulate the quadrature solution on a grid")
    _family_flags(p)
    _solve_flags(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="residual, RK4 oracle and first-integral checks")
    _family_flags(p)
    _solve_flags(p)
    p.set_defaults(func=cmd_verify, format="json")

    p = sub.add_parser("catalog", help="list, show or verify worked families")
    p.add_argument("action", choices=("list", "show", "verify"))
    p.add_argument("name", nargs="?")
    p.add_argument("--param", action="append", metavar="NAME=RATIONAL")
    p.add_argument("--from", dest="from_", type=float, default=None, metavar="X", help="default: entry's interval")
    p.add_argument("--to", type=float, default=None, metavar="X", help="default: entry's interval")
    p.add_argument("--n", type=int, default=41, help="number of grid points (default 41)")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_catalog, format="json")

    p = sub.add_parser("elliptic", help="rf x y z | F phi m | K m")
    p.add_argument("function", choices=("rf", "F", "K"))
    p.add_argument("values", nargs="+")
    p.set_defaults(func=cmd_elliptic, format="json")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error {exc}\n")
        return 2
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
