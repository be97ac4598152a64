"""Command line entry point ``puiseux-ec``.

Commands: ``classify``, ``verify``, ``torsion``, ``reduce`` and ``add``.
``--json`` switches any command to a single JSON document on stdout.  The
default precision window is read from ``PUISEUX_EC_WINDOW``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .curve import (
    CurvePoint,
    MinimalCurve,
    add_points,
    bounding_torsion_chain,
    lift_y,
    orientation_key,
)
from .errors import PuiseuxECError
from .parser import parse_point, parse_series
from .puiseux import PuiseuxNumber, format_series
from .quotient import QuotientClassification, classify, g00_member, truncated_add
from .reduction import (
    ReducedPoint,
    e0_membership,
    e1_membership,
    reduce_point,
    reduction_type,
)
from .suites import SUITES, SuiteReport, context_for, run_suite


def _plain(value):
    """JSON-friendly form: rationals as ``"p/q"`` strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, PuiseuxNumber):
        return format_series(value)
    if isinstance(value, CurvePoint):
        return "O" if value.is_infinity else {"x": _plain(value.x), "y": _plain(value.y)}
    if isinstance(value, ReducedPoint):
        if value.is_infinity:
            return "O~"
        return {"x": _plain(value.x), "y": _plain(value.y), "singular": value.singular}
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(_plain(data), indent=2))
    else:
        print("\n".join(lines))


def _curve(args) -> MinimalCurve:
    return MinimalCurve(parse_series(args.epsilon))


def classification_report(
    c: QuotientClassification, epsilon, scope: str, valuations, trunc_x=None
) -> dict:
    report = {
        "epsilon": epsilon,
        "reduction_type": c.reduction_type.value,
        "scope": scope,
        "case_label": c.case_label.value,
        "one_based": c.one_based,
        "internality": c.internality.value,
        "witness": c.witness.value,
        "torsion_valuations": list(valuations),
    }
    if trunc_x is not None:
        report["trunc_x"] = trunc_x
    if c.notes:
        report["notes"] = list(c.notes)
    return report


# --- commands ----------------------------------------------------------------


def cmd_classify(args) -> int:
    curve = _curve(args)
    ctx = context_for(curve, args.trunc_x)
    c = classify(ctx)
    vals = [p.x.valuation() for p in bounding_torsion_chain(curve, args.depth)]
    data = classification_report(c, curve.epsilon, ctx.scope, vals, args.trunc_x)
    lines = [f"{k:<19}{_plain(v)}" for k, v in data.items()]
    _emit(args, data, lines)
    return 0


def cmd_torsion(args) -> int:
    curve = _curve(args)
    chain = bounding_torsion_chain(curve, args.depth)
    data = {
        "epsilon": curve.epsilon,
        "depth": args.depth,
        "torsion_valuations": [p.x.valuation() for p in chain],
        "points": [{"order": 2 ** (k + 2), "x": p.x, "y": p.y} for k, p in enumerate(chain)],
    }
    lines = [
        f"T{2 ** (k + 2)}: v(x) = {p.x.valuation()}, x = {format_series(p.x)}"
        for k, p in enumerate(chain)
    ]
    _emit(args, data, lines)
    return 0


def _point(curve: MinimalCurve, text: str, branch: int) -> CurvePoint:
    """A point given as ``O``, ``(x, y)``, ``(x, +)`` or a bare x-coordinate
    lifted to ``branch``."""
    if text.strip() == "O" or text.strip().startswith("("):
        return parse_point(curve, text)
    return lift_y(curve, parse_series(text), branch)


def cmd_reduce(args) -> int:
    curve = _curve(args)
    p = _point(curve, args.x, _branches(args, 1)[0])
    r = reduce_point(curve, p)
    data = {
        "epsilon": curve.epsilon,
        "reduction_type": reduction_type(curve).value,
        "point": p,
        "reduced": r,
        "e0": e0_membership(curve, p),
        "e1": e1_membership(curve, p),
    }
    lines = [
        f"reduction type: {reduction_type(curve).value}",
        f"P  = {p}",
        f"P~ = {r}" + ("  (singular)" if r.singular else ""),
        f"E0: {data['e0']}   E1: {data['e1']}",
    ]
    _emit(args, data, lines)
    return 0


def cmd_add(args) -> int:
    curve = _curve(args)
    b1, b2 = _branches(args, 2)
    p = _point(curve, args.x1, b1)
    q = _point(curve, args.x2, b2)
    s = add_points(curve, p, q)
    ctx = context_for(curve, args.trunc_x)
    data = {"epsilon": curve.epsilon, "P": p, "Q": q, "sum": s}
    lines = [f"P     = {p}", f"Q     = {q}", f"P + Q = {s}"]
    if not ctx.is_full:
        t = truncated_add(ctx, p, q)
        data["truncated_sum"] = t
        lines.append(f"P +* Q = {t}")
    try:
        member = g00_member(ctx, s, args.level)
        data["sum_in_g00"] = member
        level = "collapsed" if args.level is None else f"level {args.level}"
        lines.append(f"P + Q in G00 ({level}): {member}")
        if not s.is_infinity and not s.x.is_exact_zero:
            data["orientation_key"] = orientation_key(curve, s)
    except PuiseuxECError:
        pass
    _emit(args, data, lines)
    return 0


def cmd_verify(args) -> int:
    kwargs = {
        "trials": args.trials,
        "seed": args.seed,
        "epsilon": args.epsilon,
        "depth": args.depth,
        "level": args.level,
    }
    report: SuiteReport = run_suite(args.suite, **kwargs)
    data = {
        "suite": report.name,
        "seed": report.seed,
        "passed": report.passed,
        "trials": report.trials,
        "checks": report.checks,
        "skipped": report.skipped,
        "failures": report.failures,
    }
    if "torsion_valuations" in report.details:
        data["torsion_valuations"] = report.details["torsion_valuations"]
    lines = [report.summary()]
    if "torsion_valuations" in report.details:
        lines.append("valuations: " + ", ".join(str(v) for v in data["torsion_valuations"]))
    lines += [f"  counterexample: {f}" for f in report.failures[:20]]
    _emit(args, data, lines)
    return 0 if report.passed else 1


# --- argument parsing ---------------------------------------------------------


def _branches(args, count: int) -> list[int]:
    got = list(args.branch or [])
    while len(got) < count:
        got.append(got[-1] if got else 1)
    for b in got:
        if b not in (1, -1):
            raise SystemExit(f"--branch must be 1 or -1, got {b}")
    return got[:count]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puiseux-ec",
        description="Elliptic curves y^2 = x(x+1)(x+eps) over real Puiseux series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, eps_required=True, eps_default=None):
        p.add_argument(
            "--epsilon", required=eps_required, default=eps_default,
            help="series for eps, e.g. 't', '1/2', '1/2 + t'",
        )
        p.add_argument("--json", action="store_true", help="print one JSON document")

    p = sub.add_parser("classify", help="classify G/G00 for a curve or a truncation")
    common(p)
    p.add_argument("--trunc-x", help="x-coordinate of the truncation point S (y > 0)")
    p.add_argument("--depth", type=int, default=4, help="torsion chain depth to report")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("torsion", help="bounding torsion chain T4, T8, ...")
    common(p)
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("reduce", help="reduce the point above x to the residue field")
    common(p)
    p.add_argument("x", help="x-coordinate, O, (x, y) or (x, +)")
    p.add_argument("--branch", type=int, nargs="+", help="sign of y (1 or -1)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("add", help="add the points above x1 and x2")
    common(p)
    p.add_argument("x1")
    p.add_argument("x2")
    p.add_argument("--branch", type=int, nargs="+", help="signs of y for P and Q")
    p.add_argument("--trunc-x", help="also add in the truncation by S")
    p.add_argument("--level", type=int, help="level n of the G00 test (default: collapsed)")
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    common(p, eps_required=False)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int)
    p.add_argument("--level", type=int, help="highest level n for the fstar suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PuiseuxECError, ValueError) as exc:
        kind = type(exc).__name__
        if getattr(args, "json", False):
            print(json.dumps({"error": kind, "message": str(exc)}))
        else:
            print(f"error: {kind}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
