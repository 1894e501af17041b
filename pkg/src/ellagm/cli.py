"""Command-line front end: ``ellagm {agm,periods,elog,wp,agm-values,verify}``.

Exit codes: 0 success, 1 a ``verify`` check failed, 2 invalid or degenerate
input, 3 non-convergence.  Errors go to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import __version__
from .agm import agm_scheduled
from .agm_values import EXPECTED_RESIDUES, classify_agm_value, coset_basis, schedules
from .curve import (
    CurveInvariants,
    CurveRoots,
    WeierstrassCoeffs,
    invariants_from_coeffs,
    roots_from_invariants,
)
from .elog import curve_residual, elliptic_log
from .errors import EllipticError, InputError, NonConvergence, OffCurve, ParseError
from .lattice import ReduceMode, coordinates, reduce_mod
from .numerics import PrecisionContext, cnum_to_json, format_cnum, format_real, parse_cnum
from .oracle import Point, wp
from .periods import period_basis


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    # Treat complex literals such as "-4+1i" or "-i" as values, not options.
    _COMPLEX = re.compile(r"^-(\d|\.\d|i$|[.\d]*[eE]?[+-]?\d*[+-]?[.\d]*i$)")

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = self._COMPLEX

    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class Curve:
    roots: CurveRoots
    coeffs: WeierstrassCoeffs | None = None


# -- argument handling --------------------------------------------------------

def _ctx(args) -> PrecisionContext:
    if args.digits < 1:
        raise UsageError("--digits must be positive")
    return PrecisionContext(args.digits)


def _curve(args, ctx: PrecisionContext) -> Curve:
    given = [f for f in ("roots", "g_invariants", "a_invariants") if getattr(args, f) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --roots, --g-invariants, --a-invariants")
    if args.roots is not None:
        return Curve(CurveRoots(*(parse_cnum(t, ctx) for t in args.roots)))
    if args.g_invariants is not None:
        g2, g3 = (parse_cnum(t, ctx) for t in args.g_invariants)
        return Curve(roots_from_invariants(CurveInvariants(g2, g3), ctx))
    coeffs = WeierstrassCoeffs(*(parse_cnum(t, ctx) for t in args.a_invariants))
    return Curve(roots_from_invariants(invariants_from_coeffs(coeffs, ctx), ctx), coeffs)


def _point(args, curve: Curve, ctx: PrecisionContext) -> Point:
    if args.point is None:
        raise UsageError("--point X Y is required")
    x, y = (parse_cnum(t, ctx) for t in args.point)
    if curve.coeffs is not None:
        x, y = curve.coeffs.to_short(x, y)
    if curve_residual(curve.roots, x, y) > ctx.curve_tol:
        raise OffCurve("point is not on the curve")
    return Point(x, y)


def _schedule(text: str | None):
    if not text:
        return frozenset()
    try:
        s = frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ParseError("schedule must be comma-separated integers", text, 0) from None
    if any(n < 1 for n in s):
        raise UsageError("schedule indices must be >= 1")
    return s


# -- output --------------------------------------------------------------------

class Output:
    """Collects (key, value) pairs and renders them as text or JSON."""

    def __init__(self, digits: int, as_json: bool):
        self.digits = digits
        self.as_json = as_json
        self.items: list[tuple[str, object]] = []

    def add(self, key, value):
        self.items.append((key, value))

    def _json_value(self, v):
        if v is None or isinstance(v, (bool, int, str)):
            return v
        if isinstance(v, (tuple, list)):
            return [self._json_value(x) for x in v]
        if isinstance(v, dict):
            return {k: self._json_value(x) for k, x in v.items()}
        if hasattr(v, "_mpc_"):
            return cnum_to_json(v, self.digits)
        return format_real(v, self.digits)

    def _text_value(self, v):
        if v is None:
            return "none"
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, (int, str)):
            return str(v)
        if isinstance(v, (tuple, list)):
            return "(" + ", ".join(self._text_value(x) for x in v) + ")"
        if isinstance(v, dict):
            return " ".join(f"{k}={self._text_value(x)}" for k, x in v.items())
        if hasattr(v, "_mpc_"):
            return format_cnum(v, self.digits)
        return format_real(v, self.digits)

    def render(self) -> str:
        if self.as_json:
            return json.dumps({k: self._json_value(v) for k, v in self.items}, indent=2)
        return "\n".join(f"{k} = {self._text_value(v)}" for k, v in self.items)


def _coords(c):
    return {"u": c.u, "v": c.v}


# -- commands ---------------------------------------------------------------------

def cmd_agm(args, ctx, out):
    a, b = parse_cnum(args.a, ctx), parse_cnum(args.b, ctx)
    res = agm_scheduled(a, b, _schedule(args.schedule), ctx)
    out.add("m", res.m)
    out.add("iterations", res.iterations)
    out.add("schedule", sorted(res.schedule))
    out.add("tie_broken", res.tie_broken)


def _add_periods(out, pt):
    out.add("w1", pt.w1)
    out.add("w2", pt.w2)
    out.add("w3", pt.w3)
    out.add("rectangular", pt.rectangular)
    out.add("ortho_basis", list(pt.ortho_basis) if pt.ortho_basis else None)


def cmd_periods(args, ctx, out):
    _add_periods(out, period_basis(_curve(args, ctx).roots, ctx))


def cmd_elog(args, ctx, out):
    curve = _curve(args, ctx)
    p = _point(args, curve, ctx)
    res = elliptic_log(curve.roots, p, ctx)
    z = res.z
    if args.reduce == "fundamental":
        z = reduce_mod(z, res.lattice, ReduceMode.FUNDAMENTAL, ctx)
    out.add("z", z)
    out.add("coords", _coords(coordinates(z, res.lattice, ctx)))
    out.add("m", res.m)
    out.add("iterations", res.iterations)
    out.add("basis", [res.lattice.w1, res.lattice.w2])


def cmd_wp(args, ctx, out):
    curve = _curve(args, ctx)
    z = parse_cnum(args.z, ctx)
    pt = period_basis(curve.roots, ctx)
    val = wp(z, pt.lattice, ctx)
    out.add("wp", val.wp)
    out.add("wp_prime", val.wp_prime)
    out.add("x", val.wp + curve.roots.shift)


def cmd_agm_values(args, ctx, out):
    a, b = parse_cnum(args.a, ctx), parse_cnum(args.b, ctx)
    basis = coset_basis(a, b, ctx)
    if args.schedule is not None:
        scheds = [_schedule(args.schedule)]
    else:
        scheds = list(schedules(args.depth))
    out.add("w", basis.w1)
    out.add("w_dash", basis.w2)
    reports = []
    for s in scheds:
        for sa, sb in EXPECTED_RESIDUES:
            r = classify_agm_value(a, b, s, sa, sb, ctx, basis=basis)
            reports.append({
                "schedule": ",".join(str(n) for n in sorted(s)) or "-",
                "signs": f"{'+' if sa > 0 else '-'}{'+' if sb > 0 else '-'}",
                "u": r.u,
                "v": r.v,
                "residues": f"{r.residues[0]},{r.residues[1]}",
                "primitive": r.primitive,
            })
    if out.as_json:
        out.add("reports", reports)
    else:
        for r in reports:
            out.add(f"S={r['schedule']} {r['signs']}", f"(u, v) = ({r['u']}, {r['v']}) mod 4 = ({r['residues']})")


def cmd_verify(args, ctx, out):
    mp = ctx.mp
    curve = _curve(args, ctx)
    roots = curve.roots
    tol = mp.mpf(10) ** (-(args.tol if args.tol is not None else max(args.digits - 10, 1)))
    pt = period_basis(roots, ctx)
    scale = max(abs(e) for e in roots) + 1
    checks = []
    # w3 = +-w1 +- w2
    rel = min(abs(pt.w3 - s1 * pt.w1 - s2 * pt.w2) for s1 in (1, -1) for s2 in (1, -1))
    checks.append(("w3_relation", rel / max(abs(pt.w1), abs(pt.w2)) <= tol))
    for j, w in enumerate(pt.periods, 1):
        val = wp(w / 2, pt.lattice, ctx)
        x = val.wp + roots.shift
        near = min(abs(x - e) for e in roots)
        ok = near <= tol * scale and abs(val.wp_prime) <= tol * scale ** 1.5
        checks.append((f"half_period_{j}", ok))
    if args.point is not None:
        p = _point(args, curve, ctx)
        res = elliptic_log(roots, p, ctx)
        val = wp(res.z, pt.lattice, ctx)
        pscale = abs(p.x) + abs(p.y) + scale
        ok = abs(val.wp + roots.shift - p.x) <= tol * pscale and abs(val.wp_prime - p.y) <= tol * pscale
        checks.append(("round_trip", bool(ok)))
    for name, ok in checks:
        out.add(name, "pass" if ok else "fail")
    return 0 if all(ok for _, ok in checks) else 1


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--digits", type=int, default=100, help="decimal digits (default 100)")
    common.add_argument("--json", action="store_true", help="emit JSON")

    curve = _Parser(add_help=False)
    curve.add_argument("--roots", nargs=3, metavar=("E1", "E2", "E3"))
    curve.add_argument("--g-invariants", nargs=2, metavar=("G2", "G3"))
    curve.add_argument("--a-invariants", nargs=5, metavar=("A1", "A2", "A3", "A4", "A6"))

    point = _Parser(add_help=False)
    point.add_argument("--point", nargs=2, metavar=("X", "Y"))

    parser = _Parser(prog="ellagm", description="Optimal AGM, periods and elliptic logarithms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("agm", parents=[common], help="AGM limit M_S(a, b)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--schedule", help='bad-step indices, e.g. "1,3"')
    p.set_defaults(func=cmd_agm)

    p = sub.add_parser("periods", parents=[common, curve], help="period triple w1, w2, w3")
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("elog", parents=[common, curve, point], help="elliptic logarithm of a point")
    p.add_argument("--reduce", choices=("strip", "fundamental"), default="strip")
    p.set_defaults(func=cmd_elog)

    p = sub.add_parser("wp", parents=[common, curve], help="Weierstrass P and P' of the period lattice")
    p.add_argument("z")
    p.set_defaults(func=cmd_wp)

    p = sub.add_parser("agm-values", parents=[common], help="classify AGM values in the (w, w') basis")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--schedule", help="a single schedule; default: all subsets up to --depth")
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_agm_values)

    p = sub.add_parser("verify", parents=[common, curve, point], help="self-checks via the P oracle")
    p.add_argument("--tol", type=int, help="pass threshold 10^-TOL (default digits - 10)")
    p.set_defaults(func=cmd_verify)
    return parser


def _fail(exc: Exception, code: int) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        ctx = _ctx(args)
        out = Output(args.digits, args.json)
        code = args.func(args, ctx, out) or 0
    except NonConvergence as exc:
        return _fail(exc, 3)
    except (InputError, ValueError) as exc:
        return _fail(exc, 2)
    except EllipticError as exc:
        return _fail(exc, 4)
    print(out.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
