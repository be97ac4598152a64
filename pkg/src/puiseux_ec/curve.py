"""Elliptic curves ``y^2 = x(x+1)(x+eps)`` over the series field.

Points are :class:`CurvePoint` values; ``INFINITY`` is the identity ``O``.
The connected component of the identity is the unbounded branch ``x >= 0``;
the other real branch is the oval ``-1 <= x <= -eps``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable

from .errors import (
    DegenerateRoots,
    HalvingFailed,
    IndeterminateAtHorizon,
    NegativeRadicand,
    NotOnComponent,
    NotOnCurve,
)
from .puiseux import DEFAULT_CONTEXT, ONE, ZERO, PrecisionContext, PuiseuxNumber

Scalar = PuiseuxNumber


@dataclass(frozen=True)
class CurvePoint:
    """An affine point ``(x, y)`` or, with both coordinates ``None``, ``O``."""

    x: PuiseuxNumber | None = None
    y: PuiseuxNumber | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> CurvePoint:
        if self.is_infinity:
            return self
        return CurvePoint(self.x, -self.y)

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class MinimalCurve:
    """``y^2 = x(x+1)(x+eps)`` with ``0 < eps < 1``."""

    epsilon: PuiseuxNumber
    precision: PrecisionContext = field(default=DEFAULT_CONTEXT, compare=False)

    def __post_init__(self):
        eps = PuiseuxNumber.coerce(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if eps.sign() != 1 or eps.compare(1) != -1:
            raise ValueError(f"minimal form needs 0 < eps < 1, got {eps}")

    @property
    def a2(self) -> PuiseuxNumber:
        return self.epsilon + 1

    def cubic(self, x: PuiseuxNumber) -> PuiseuxNumber:
        return x * (x + 1) * (x + self.epsilon)

    def contains(self, p: CurvePoint) -> bool:
        if p.is_infinity:
            return True
        return (p.y * p.y).agrees_with(self.cubic(p.x))

    def point(self, x, y) -> CurvePoint:
        p = CurvePoint(PuiseuxNumber.coerce(x), PuiseuxNumber.coerce(y))
        if not self.contains(p):
            raise NotOnCurve(f"{p} is not on {self}")
        return p

    @property
    def t2(self) -> CurvePoint:
        """The 2-torsion point (0, 0), farthest from O on the component."""
        return CurvePoint(ZERO, ZERO)

    def two_torsion(self) -> list[CurvePoint]:
        return [self.t2, CurvePoint(-ONE, ZERO), CurvePoint(-self.epsilon, ZERO)]

    def __str__(self) -> str:
        return f"y^2 = x(x+1)(x + {self.epsilon})"


# --- Legendre form -----------------------------------------------------------


@dataclass(frozen=True)
class CoordinateChange:
    """``x -> (x - shift)/scale``, ``y -> y/scale^(3/2)``."""

    shift: PuiseuxNumber
    scale: PuiseuxNumber
    y_scale: PuiseuxNumber

    def forward(self, p: CurvePoint) -> CurvePoint:
        if p.is_infinity:
            return p
        return CurvePoint((p.x - self.shift) / self.scale, p.y / self.y_scale)

    def backward(self, p: CurvePoint) -> CurvePoint:
        if p.is_infinity:
            return p
        return CurvePoint(p.x * self.scale + self.shift, p.y * self.y_scale)


def legendre_to_minimal(e1, e2, e3, precision: PrecisionContext | None = None):
    """Minimal form of ``y^2 = (x-e1)(x-e2)(x-e3)`` for real roots.

    The roots are sorted first; returns ``(curve, change)`` where ``change``
    maps points of the original curve to the minimal one.
    """
    precision = precision or DEFAULT_CONTEXT
    roots = [PuiseuxNumber.coerce(r) for r in (e1, e2, e3)]
    for i in range(3):
        for j in range(i + 1, 3):
            if roots[i].compare(roots[j]) == 0:
                raise DegenerateRoots(f"repeated root {roots[i]}")
    lo, mid, hi = _sorted(roots)
    span = hi - lo
    eps = (hi - mid) * span.inverse(precision)
    change = CoordinateChange(shift=hi, scale=span, y_scale=span * span.sqrt(precision))
    return MinimalCurve(eps, precision), change


def _sorted(xs: list[PuiseuxNumber]) -> list[PuiseuxNumber]:
    out = list(xs)
    for i in range(len(out)):
        for j in range(len(out) - 1 - i):
            if out[j].compare(out[j + 1]) > 0:
                out[j], out[j + 1] = out[j + 1], out[j]
    return out


# --- group law ---------------------------------------------------------------


def lift_y(
    curve: MinimalCurve, x, branch: int = 1, precision: PrecisionContext | None = None
) -> CurvePoint:
    """The point above ``x`` on the branch ``sign(y) = branch``; ``precision``
    overrides the curve's window for the square root."""
    x = PuiseuxNumber.coerce(x)
    r = curve.cubic(x)
    if r.is_exact_zero:
        return CurvePoint(x, ZERO)
    if r.sign() < 0:
        raise NegativeRadicand(f"x = {x} gives a negative cubic")
    y = r.sqrt(precision or curve.precision)
    return CurvePoint(x, y if branch > 0 else -y)


def _same(a: PuiseuxNumber, b: PuiseuxNumber) -> bool | None:
    """True/False when decidable; None when they agree only up to the horizon."""
    if a == b:
        return True
    d = a - b
    if d.terms:
        return False
    if d.is_exact_zero:
        return True
    return None


def _quotient(curve: MinimalCurve, num: PuiseuxNumber, den: PuiseuxNumber) -> PuiseuxNumber:
    """``num / den``; the inverse is only expanded as far as ``num`` is known,
    since the product cannot be more precise than that."""
    ctx = curve.precision
    if num.is_exact_zero:
        return num
    if not num.is_exact and num.terms:
        rel = num.horizon - num.terms[0][0]
        if rel < ctx.window:
            ctx = replace(ctx, window=max(rel, Fraction(1, ctx.max_denominator)))
    return num * den.inverse(ctx)


def add_points(curve: MinimalCurve, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    """Chord-tangent sum ``p + q``."""
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    same_x = _same(p.x, q.x)
    if same_x is None:
        raise IndeterminateAtHorizon("x-coordinates agree only up to the horizon")
    if same_x:
        opposite = _same(p.y, -q.y)
        if opposite:
            return INFINITY
        equal = _same(p.y, q.y)
        if equal:
            return double_point(curve, p)
        raise IndeterminateAtHorizon("cannot tell q from p or -p")
    slope = _quotient(curve, q.y - p.y, q.x - p.x)
    x3 = slope * slope - curve.a2 - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return CurvePoint(x3, y3)


def neg_point(p: CurvePoint) -> CurvePoint:
    return -p


def sub_points(curve: MinimalCurve, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    return add_points(curve, p, -q)


def double_point(curve: MinimalCurve, p: CurvePoint) -> CurvePoint:
    """``[2]p`` with ``x = (x^2 - eps)^2 / (4 x (x+1)(x+eps))``."""
    if p.is_infinity:
        return p
    if p.y.is_exact_zero:
        return INFINITY
    if p.y.is_indeterminate:
        raise IndeterminateAtHorizon("y is zero up to the horizon")
    eps = curve.epsilon
    x = p.x
    num = x * x - eps
    x3 = _quotient(curve, num * num, 4 * curve.cubic(x))
    slope = _quotient(curve, 3 * x * x + 2 * curve.a2 * x + eps, 2 * p.y)
    y3 = slope * (x - x3) - p.y
    return CurvePoint(x3, y3)


def multiply_point(curve: MinimalCurve, p: CurvePoint, n: int) -> CurvePoint:
    if n < 0:
        return multiply_point(curve, -p, -n)
    result = INFINITY
    base = p
    while n:
        if n & 1:
            result = add_points(curve, result, base)
        n >>= 1
        if n:
            base = double_point(curve, base)
    return result


def points_agree(p: CurvePoint, q: CurvePoint) -> bool:
    """Coordinates coincide termwise below the common horizon."""
    if p.is_infinity or q.is_infinity:
        return p.is_infinity and q.is_infinity
    return p.x.agrees_with(q.x) and p.y.agrees_with(q.y)


# --- halving ---------------------------------------------------------------


def halve_point(curve: MinimalCurve, p: CurvePoint) -> list[CurvePoint]:
    """Every ``q`` with coordinates in the model field and ``[2]q = p``."""
    return _halves(curve, p)


def _halves(
    curve: MinimalCurve,
    p: CurvePoint,
    keep_x: Callable[[PuiseuxNumber], bool] | None = None,
    nearest: bool = False,
) -> list[CurvePoint]:
    if p.is_infinity:
        raise ValueError("halving O is not supported; its halves are the 2-torsion")
    ctx = curve.precision
    x = p.x
    rads = [x, x + 1, x + curve.epsilon]
    for r in rads:
        if not r.is_exact_zero and r.sign() < 0:
            return []
    s0, s1 = rads[0].sqrt(ctx), rads[1].sqrt(ctx)
    s01 = s0 * s1
    if s01.is_exact_zero or p.y.is_indeterminate:
        s2 = rads[2].sqrt(ctx)
    else:
        # s0 s1 s2 = |y|, so s2 already lies in the field of s0 and s1.
        s2 = p.y * p.y.sign() * s01.inverse(ctx)
    s02, s12 = s0 * s2, s1 * s2
    candidates = []
    for a in (1, -1):
        for b in (1, -1):
            xq = x + s01 * a + s02 * b + s12 * (a * b)
            if keep_x is None or keep_x(xq):
                candidates.append((xq, a, b))
    if nearest:
        candidates.sort(key=cmp_to_key(lambda u, v: v[0].compare(u[0])))
    found: list[CurvePoint] = []
    for xq, a, b in candidates:
        yq = (s0 + s1 * a) * (s0 + s2 * b) * (s1 * a + s2 * b)
        for q in _validated(curve, p, CurvePoint(xq, yq)):
            if nearest and q.y.sign() < 0:
                continue
            if not any(points_agree(q, f) for f in found):
                found.append(q)
        if nearest and found:
            break
    return found


def _validated(curve: MinimalCurve, p: CurvePoint, q: CurvePoint) -> list[CurvePoint]:
    if q.y.is_exact_zero:
        d = INFINITY
    else:
        d = double_point(curve, q)
    if d.is_infinity or not d.x.agrees_with(p.x):
        return []
    out = []
    if d.y.agrees_with(p.y):
        out.append(q)
    if d.y.agrees_with(-p.y):
        out.append(-q)
    return out


# --- orientation -------------------------------------------------------------


def on_component(p: CurvePoint) -> bool:
    return p.is_infinity or p.x.is_exact_zero or p.x.sign() > 0


def orientation_key(curve: MinimalCurve, p: CurvePoint) -> PuiseuxNumber:
    """Position of ``p`` on the component minus ``T2``: ``O -> 0``, upper
    branch ``1/(1+x)``, lower branch ``-1/(1+x)``."""
    if p.is_infinity:
        return ZERO
    if not on_component(p):
        raise NotOnComponent(f"{p} lies on the oval")
    if p.x.is_exact_zero:
        raise NotOnComponent("T2 is removed from the orientation")
    k = (p.x + 1).inverse(curve.precision)
    return k if p.y.sign() > 0 else -k


def orientation_compare(curve: MinimalCurve, p: CurvePoint, q: CurvePoint) -> int:
    """Sign of ``key(p) - key(q)`` without forming the keys."""

    def rank(r: CurvePoint) -> int:
        if r.is_infinity:
            return 0
        if not on_component(r) or r.x.is_exact_zero:
            raise NotOnComponent(f"{r} has no orientation key")
        return r.y.sign()

    rp, rq = rank(p), rank(q)
    if rp != rq:
        return (rp > rq) - (rp < rq)
    if rp == 0:
        return 0
    # on one branch the key is monotone in x: decreasing above, increasing below
    c = p.x.compare(q.x)
    return -c if rp > 0 else c


# --- torsion -----------------------------------------------------------------


def four_torsion(curve: MinimalCurve) -> CurvePoint:
    """``T4 = (sqrt(eps), y > 0)``, the half of ``T2`` on the upper branch."""
    return lift_y(curve, curve.epsilon.sqrt(curve.precision), 1)


CHAIN_START_WINDOW = 2


def bounding_torsion_chain(
    curve: MinimalCurve, depth: int, window: int | None = None
) -> list[CurvePoint]:
    """``[T4, T8, ..., T_{2^depth}]`` on the upper branch, each the half of
    its predecessor closest to ``O``.

    Halving chains produce nested radicals whose size grows quickly with the
    relative window, while valuations and the choice of half only need a few
    terms.  Unless ``window`` is given, the chain is computed with a window of
    ``CHAIN_START_WINDOW`` that doubles (up to the curve's own window) whenever
    a step is undecidable at the horizon.  Returned points carry the window
    they were computed with.
    """
    if depth < 2:
        raise ValueError("depth must be at least 2")
    limit = curve.precision.window
    w = window if window is not None else min(CHAIN_START_WINDOW, limit)
    while True:
        work = MinimalCurve(curve.epsilon, replace(curve.precision, window=w))
        try:
            return _chain(work, depth)
        except IndeterminateAtHorizon:
            if window is not None or w >= limit:
                raise
            w = min(2 * w, limit)


def _chain(curve: MinimalCurve, depth: int) -> list[CurvePoint]:
    chain = [four_torsion(curve)]
    for k in range(3, depth + 1):
        # On the upper branch of E(K)^0 the key 1/(1+x) is minimal where x is
        # maximal, so candidates are validated in decreasing x.
        halves = _halves(
            curve, chain[-1], keep_x=lambda xq: xq.sign() > 0, nearest=True
        )
        if not halves:
            raise HalvingFailed(f"no rational half of T_{2 ** (k - 1)}")
        chain.append(halves[0])
    return chain


def kills_by_two_power(curve: MinimalCurve, p: CurvePoint, k: int) -> bool:
    """True when ``[2^k] p = O``.

    Repeated doubling of an inexact point cannot land exactly on a 2-torsion
    point, so the last step is decided by ``[2^(k-1)] p`` agreeing with one.
    """
    if k == 0:
        return p.is_infinity
    q = p
    for _ in range(k - 1):
        if q.is_infinity:
            return True
        q = double_point(curve, q)
    if q.is_infinity:
        return True
    return q.y.agrees_with(ZERO) and any(q.x.agrees_with(r.x) for r in curve.two_torsion())
