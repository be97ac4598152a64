"""Seeded verification suites behind ``puiseux-ec verify``.

Every suite returns a :class:`SuiteReport`; failures carry counterexamples
printed in the series syntax so they can be pasted back into the CLI.  Trial
``i`` draws from ``sub_rng(seed, i)`` only, so results do not depend on the
order trials run in.

Suites work at a small relative window (``SUITE_WINDOW``).  Horizons make
every answer sound at any window, so low precision can only show up as
:class:`IndeterminateAtHorizon`; such a trial is rerun with the window
doubled, up to the curve's own window.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from .curve import (
    INFINITY,
    CurvePoint,
    MinimalCurve,
    add_points,
    bounding_torsion_chain,
    kills_by_two_power,
    lift_y,
    points_agree,
    sub_points,
)
from .errors import IndeterminateAtHorizon, UnknownSuite
from .parser import parse_point, parse_series
from .puiseux import ONE, PrecisionContext, PuiseuxNumber, format_series
from .quotient import (
    TruncationContext,
    classify,
    f_star,
    g00_member,
    quotient_coordinate,
    target_truncation,
)
from .reduction import (
    ReductionType,
    e0_membership,
    reduce_point,
    reduced_add,
    reduction_type,
)
from .sampling import random_point, random_series, sub_rng

SUITE_WINDOW = 4


@dataclass
class SuiteReport:
    name: str
    seed: int
    trials: int = 0
    checks: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.checks > 0

    def check(self, ok: bool, message: Callable[[], str]) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message())

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = (
            f"{self.name}: {status} ({self.checks} checks over {self.trials} trials"
            f", {self.skipped} skipped, seed {self.seed})"
        )
        return out


def _pt(p: CurvePoint) -> str:
    if p.is_infinity:
        return "O"
    return f"({format_series(p.x)}, {format_series(p.y)})"


def _with_window(curve: MinimalCurve, window) -> MinimalCurve:
    return MinimalCurve(curve.epsilon, replace(curve.precision, window=window))


def _escalating(report: SuiteReport, curve: MinimalCurve, trial: Callable[[MinimalCurve], None]):
    """Run ``trial`` at ``SUITE_WINDOW``, doubling on indeterminacy."""
    limit = curve.precision.window
    w = min(Fraction(SUITE_WINDOW), limit)
    while True:
        checks, fails = report.checks, len(report.failures)
        try:
            trial(_with_window(curve, w))
            return
        except IndeterminateAtHorizon:
            report.checks, report.failures[:] = checks, report.failures[:fails]
            if w >= limit:
                report.skipped += 1
                return
            w = min(2 * w, limit)


# --- valuation axioms ------------------------------------------------------------


def valuation_axioms(trials: int = 1000, seed: int = 0, **_) -> SuiteReport:
    report = SuiteReport("valuation-axioms", seed)
    ctx = PrecisionContext(window=8)
    for i in range(trials):
        rng = sub_rng(seed, i)
        a, b = random_series(rng), random_series(rng)
        report.trials += 1
        va, vb = a.valuation(), b.valuation()
        ab = a * b
        report.check(
            ab.valuation() == va + vb,
            lambda: f"v(ab) != v(a)+v(b) for a = {a}, b = {b}",
        )
        s = a + b
        if s.terms:
            vs = s.valuation()
            report.check(vs >= min(va, vb), lambda: f"ultrametric fails for a = {a}, b = {b}")
            if va != vb or a.sign() == b.sign():
                report.check(
                    vs == min(va, vb),
                    lambda: f"v(a+b) != min(v(a), v(b)) for a = {a}, b = {b}",
                )
        else:
            report.check(
                s.horizon <= min(va, vb) or (va == vb and a.sign() != b.sign()),
                lambda: f"sum hidden by horizon although v(a) != v(b): a = {a}, b = {b}",
            )
        inv = a.inverse(ctx)
        report.check(
            inv.valuation() == -va and (a * inv).agrees_with(ONE),
            lambda: f"invert oracle fails for a = {a}",
        )
        c = a if a.sign() > 0 else -a
        r = c.sqrt(ctx)
        report.check(
            r.valuation() == c.valuation() / 2 and r.sign() == 1 and (r * r).agrees_with(c),
            lambda: f"sqrt oracle fails for a = {c}",
        )
    return report


# --- group law ---------------------------------------------------------------------

GROUP_LAW_EPSILONS = ("1/2 + t", "1 - t", "t")


def group_law(trials: int = 200, seed: int = 0, epsilon=None, **_) -> SuiteReport:
    """Identity, inverse, closure and associativity; without ``epsilon`` the
    trials cycle through a good, a nonsplit and a split curve."""
    report = SuiteReport("group-law", seed)
    if epsilon is None:
        curves = [MinimalCurve(parse_series(e)) for e in GROUP_LAW_EPSILONS]
    else:
        curves = [MinimalCurve(_series(epsilon))]
    report.details["epsilons"] = [format_series(c.epsilon) for c in curves]

    for i in range(trials):
        rng = sub_rng(seed, i)
        base = curves[i % len(curves)]
        report.trials += 1

        def trial(curve: MinimalCurve, rng_state=rng.getstate()):
            r = random.Random()
            r.setstate(rng_state)
            p, q, s = (random_point(curve, r) for _ in range(3))
            report.check(
                points_agree(add_points(curve, p, INFINITY), p)
                and points_agree(add_points(curve, INFINITY, p), p),
                lambda: f"identity law fails at {_pt(p)} on eps = {curve.epsilon}",
            )
            report.check(
                sub_points(curve, p, p).is_infinity,
                lambda: f"inverse law fails at {_pt(p)} on eps = {curve.epsilon}",
            )
            pq = add_points(curve, p, q)
            report.check(
                curve.contains(pq),
                lambda: f"closure fails for {_pt(p)} + {_pt(q)} on eps = {curve.epsilon}",
            )
            left = add_points(curve, pq, s)
            right = add_points(curve, p, add_points(curve, q, s))
            report.check(
                points_agree(left, right),
                lambda: (
                    f"associativity fails for {_pt(p)}, {_pt(q)}, {_pt(s)}"
                    f" on eps = {curve.epsilon}"
                ),
            )

        _escalating(report, base, trial)
    return report


# --- reduction homomorphism --------------------------------------------------------

HOM_VALUATIONS = (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0))


def reduction_hom(trials: int = 100, seed: int = 0, epsilon="1/2 + t", **_) -> SuiteReport:
    """``reduce(P + Q) = reduce(P) + reduce(Q)`` for ``P, Q, P + Q`` in ``E_0``."""
    report = SuiteReport("reduction-hom", seed)
    base = MinimalCurve(_series(epsilon))
    for i in range(trials):
        rng = sub_rng(seed, i)
        report.trials += 1

        def trial(curve: MinimalCurve, rng_state=rng.getstate()):
            r = random.Random()
            r.setstate(rng_state)
            p = random_point(curve, r, valuations=HOM_VALUATIONS)
            q = random_point(curve, r, valuations=HOM_VALUATIONS)
            s = add_points(curve, p, q)
            if not all(e0_membership(curve, z) for z in (p, q, s)):
                report.skipped += 1
                return
            lhs = reduce_point(curve, s)
            rhs = reduced_add(curve, reduce_point(curve, p), reduce_point(curve, q))
            same = lhs.is_infinity == rhs.is_infinity and (
                lhs.is_infinity or (lhs.x == rhs.x and lhs.y == rhs.y)
            )
            report.check(
                same,
                lambda: f"reduce({_pt(p)} + {_pt(q)}) = {lhs} but the reduced sum is {rhs}",
            )

        _escalating(report, base, trial)
    return report


# --- torsion chain ------------------------------------------------------------------


def torsion_chain(seed: int = 0, epsilon="t", depth: int = 6, **_) -> SuiteReport:
    """Valuations of the bounding chain, its doubling law and the growth bound
    ``x_{T_{2^n}} > eps / 4^(n-3)`` (``n >= 3``) when ``v(eps) = 0``."""
    report = SuiteReport("torsion-chain", seed)
    curve = MinimalCurve(_series(epsilon))
    chain = bounding_torsion_chain(curve, depth)
    report.trials = len(chain)
    vals = [p.x.valuation() for p in chain]
    report.details["torsion_valuations"] = vals
    veps = curve.epsilon.valuation()
    report.check(vals[0] == veps / 2, lambda: f"v(x_T4) = {vals[0]} != v(eps)/2")
    for k in range(1, len(vals)):
        if veps > 0:
            report.check(
                vals[k - 1] == 2 * vals[k],
                lambda: f"v(x_T{2 ** (k + 1)}) = {vals[k - 1]} is not 2 v(x_T{2 ** (k + 2)})",
            )
        else:
            n = k + 2
            bound = curve.epsilon * Fraction(1, 4 ** (n - 3))
            report.check(
                vals[k] == 0 and chain[k].x.compare(bound) > 0,
                lambda: f"x_T{2 ** n} = {chain[k].x} violates x > eps/4^{n - 3}",
            )
    for k, p in enumerate(chain):
        report.check(
            kills_by_two_power(curve, p, k + 2),
            lambda: f"[2^{k + 2}] T{2 ** (k + 2)} != O",
        )
    return report


# --- f* -----------------------------------------------------------------------------

FSTAR_GRID = tuple(Fraction(k, 8) for k in range(-8, 17))


def fstar(trials: int = 50, seed: int = 0, epsilon="t^2", level: int = 8, **_) -> SuiteReport:
    """Well-definedness of ``f*`` at every level ``n <= level``: when ``P - Q``
    lies in the level-``2n`` set, ``|v(f*(P)/f*(Q))| <= v(eps)/n`` in ``H``."""
    report = SuiteReport("fstar", seed)
    base = MinimalCurve(_series(epsilon))
    if reduction_type(base) is not ReductionType.SPLIT:
        report.failures.append(f"fstar needs split reduction, eps = {base.epsilon}")
        return report
    veps = base.epsilon.valuation()
    grid = tuple(v * veps / 2 for v in FSTAR_GRID)
    for n in range(1, level + 1):
        for i in range(trials):
            rng = sub_rng(seed, 1000 * n + i)
            report.trials += 1

            def trial(curve: MinimalCurve, rng_state=rng.getstate(), n=n):
                r = random.Random()
                r.setstate(rng_state)
                ctx = TruncationContext(curve)
                h = target_truncation(ctx)
                p = random_point(curve, r, valuations=grid)
                small = [v for v in grid if v < veps / (2 * n)]
                d = random_point(curve, r, r.choice(small))
                q = sub_points(curve, p, d)
                diff = sub_points(curve, p, q)
                if not g00_member(ctx, diff, 2 * n):
                    report.skipped += 1
                    return
                ratio = h.div(f_star(ctx, p), f_star(ctx, q))
                report.check(
                    abs(ratio.valuation()) <= veps / n,
                    lambda: (
                        f"level {n}: |v(f*(P)/f*(Q))| = {abs(ratio.valuation())} > v(eps)/{n}"
                        f" for P = {_pt(p)}, Q = {_pt(q)}"
                    ),
                )

            _escalating(report, base, trial)
    return report


# --- remminus -------------------------------------------------------------------------


def remminus(trials: int = 100, seed: int = 0, epsilon="t^2", **_) -> SuiteReport:
    """``v(x_{P-Q}) = v(x_P) + v(x_Q) - 2 min`` for ``P, Q`` in distinct
    classes on one branch with distinct valuations in ``(0, v(eps))``.

    Outside that range the identity is not claimed: opposite branches, or a
    point of ``G00``, give counterexamples.
    """
    report = SuiteReport("remminus", seed)
    base = MinimalCurve(_series(epsilon))
    veps = base.epsilon.valuation()
    if not veps > 0:
        report.failures.append(f"remminus needs v(eps) > 0, eps = {base.epsilon}")
        return report
    grid = [veps * Fraction(k, 16) for k in range(1, 16)]
    for i in range(trials):
        rng = sub_rng(seed, i)
        report.trials += 1

        def trial(curve: MinimalCurve, rng_state=rng.getstate()):
            r = random.Random()
            r.setstate(rng_state)
            ctx = TruncationContext(curve)
            vp, vq = r.sample(grid, 2)
            branch = r.choice((1, -1))
            p = random_point(curve, r, vp, branch)
            q = random_point(curve, r, vq, branch)
            if quotient_coordinate(ctx, p) == quotient_coordinate(ctx, q):
                report.skipped += 1
                return
            d = sub_points(curve, p, q)
            want = vp + vq - 2 * min(vp, vq)
            got = d.x.valuation()
            report.check(
                got == want,
                lambda: f"v(x_(P-Q)) = {got} != {want} for P = {_pt(p)}, Q = {_pt(q)}",
            )

        _escalating(report, base, trial)
    return report


# --- translation by T2 --------------------------------------------------------------


def t2_translation(trials: int = 50, seed: int = 0, epsilon="t", **_) -> SuiteReport:
    """``v(x_{P - T2}) = v(eps) - v(x_P)`` for points of ``E(K)^0``."""
    report = SuiteReport("t2-translation", seed)
    base = MinimalCurve(_series(epsilon))
    veps = base.epsilon.valuation()
    for i in range(trials):
        rng = sub_rng(seed, i)
        report.trials += 1

        def trial(curve: MinimalCurve, rng_state=rng.getstate()):
            r = random.Random()
            r.setstate(rng_state)
            p = random_point(curve, r)
            d = sub_points(curve, p, curve.t2)
            want = veps - p.x.valuation()
            got = d.x.valuation()
            report.check(
                got == want,
                lambda: f"v(x_(P-T2)) = {got} != {want} for P = {_pt(p)}",
            )

        _escalating(report, base, trial)
    return report


# --- classification table -----------------------------------------------------------

CLASSIFICATION_TABLE = (
    ("t", None, ("FullSplit", True, "ValueGroup")),
    ("1/2", None, ("FullGoodOrNonsplit", False, "ResidueField")),
    ("1 - t", None, ("FullGoodOrNonsplit", False, "ResidueField")),
    ("t", "t^(-1)", ("Trunc2_NegVal", False, "ResidueField")),
    ("t", "t^(1/4)", ("Trunc3_SplitPosVal", True, "ValueGroup")),
    ("t", "1", ("Trunc4_SplitZeroVal", False, "ResidueField")),
)

EXPECTED_TYPES = {"t": "split", "1/2": "good", "1 - t": "nonsplit"}


def classification_table(seed: int = 0, **_) -> SuiteReport:
    report = SuiteReport("classification-table", seed)
    rows = []
    for eps, trunc, expected in CLASSIFICATION_TABLE:
        report.trials += 1
        curve = MinimalCurve(parse_series(eps))
        ctx = context_for(curve, trunc)
        c = classify(ctx)
        got = (c.case_label.value, c.one_based, c.internality.value)
        rows.append((eps, trunc, c))
        report.check(
            got == expected and c.reduction_type.value == EXPECTED_TYPES[eps],
            lambda: f"eps = {eps}, S_x = {trunc}: got {got}, expected {expected}",
        )
        report.check(
            c.one_based == (c.internality.value == "ValueGroup"),
            lambda: f"dichotomy broken for eps = {eps}, S_x = {trunc}",
        )
    report.details["rows"] = rows
    return report


def context_for(curve: MinimalCurve, trunc_x=None) -> TruncationContext:
    """Full component, or the truncation by ``S`` given as an x-coordinate
    (lifted to ``y > 0``) or in point syntax ``(x, +)``."""
    if trunc_x is None:
        return TruncationContext(curve)
    if isinstance(trunc_x, str) and trunc_x.strip().startswith("("):
        return TruncationContext(curve, parse_point(curve, trunc_x))
    return TruncationContext(curve, lift_y(curve, _series(trunc_x), 1))


# --- registry -------------------------------------------------------------------------

SUITES: dict[str, Callable[..., SuiteReport]] = {
    "valuation-axioms": valuation_axioms,
    "group-law": group_law,
    "reduction-hom": reduction_hom,
    "torsion-chain": torsion_chain,
    "fstar": fstar,
    "remminus": remminus,
    "t2-translation": t2_translation,
    "classification-table": classification_table,
}


def run_suite(name: str, **kwargs) -> SuiteReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    return suite(**kwargs)


def _series(value) -> PuiseuxNumber:
    if isinstance(value, str):
        return parse_series(value)
    return PuiseuxNumber.coerce(value)
