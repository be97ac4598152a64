"""Reduction of a minimal curve to the residue field.

Taking standard parts sends ``y^2 = x(x+1)(x+eps)`` to the real cubic
``y^2 = x(x+1)(x+e)`` with ``e = st(eps)``.  Two roots collide exactly when
``e`` is 0 (split: a real node at the origin) or 1 (nonsplit: a complex node
at ``(-1, 0)``); otherwise the reduced curve is nonsingular.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .curve import CurvePoint, MinimalCurve
from .errors import SingularOperand
from .surd import Coefficient


class ReductionType(enum.Enum):
    GOOD = "good"
    NONSPLIT = "nonsplit"
    SPLIT = "split"


@dataclass(frozen=True)
class ReducedPoint:
    """A point of the reduced curve; ``x is None`` stands for ``O~``."""

    x: Coefficient | None = None
    y: Coefficient | None = None
    singular: bool = False

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        if self.is_infinity:
            return "O~"
        return f"({self.x}, {self.y})"


REDUCED_INFINITY = ReducedPoint()


def reduction_type(curve: MinimalCurve) -> ReductionType:
    eps = curve.epsilon
    if eps.valuation() > 0:
        return ReductionType.SPLIT
    if (eps - 1).valuation() > 0:
        return ReductionType.NONSPLIT
    return ReductionType.GOOD


def residue_epsilon(curve: MinimalCurve) -> Coefficient:
    return curve.epsilon.standard_part()


def singular_point(curve: MinimalCurve) -> tuple[Coefficient, Coefficient] | None:
    """The node of the reduced curve, if it has one."""
    kind = reduction_type(curve)
    if kind is ReductionType.SPLIT:
        return (0, 0)
    if kind is ReductionType.NONSPLIT:
        return (-1, 0)
    return None


def _reduced(curve: MinimalCurve, x, y) -> ReducedPoint:
    node = singular_point(curve)
    return ReducedPoint(x, y, node is not None and x == node[0] and y == node[1])


def reduce_point(curve: MinimalCurve, p: CurvePoint) -> ReducedPoint:
    """``(st(x), st(y))`` for finite coordinates, ``O~`` otherwise."""
    if p.is_infinity or p.x.valuation() < 0:
        return REDUCED_INFINITY
    return _reduced(curve, p.x.standard_part(), p.y.standard_part())


def e1_membership(curve: MinimalCurve, p: CurvePoint) -> bool:
    return p.is_infinity or p.x.valuation() < 0


def e0_membership(curve: MinimalCurve, p: CurvePoint) -> bool:
    return not reduce_point(curve, p).singular


def reduced_contains(curve: MinimalCurve, a: ReducedPoint) -> bool:
    if a.is_infinity:
        return True
    e = residue_epsilon(curve)
    return a.y * a.y == a.x * (a.x + 1) * (a.x + e)


def reduced_add(curve: MinimalCurve, a: ReducedPoint, b: ReducedPoint) -> ReducedPoint:
    """Chord-tangent law on the nonsingular locus of the reduced curve."""
    node = singular_point(curve)
    if any(
        r.singular or (node is not None and (r.x, r.y) == node) for r in (a, b)
    ):
        raise SingularOperand("the node is not in the group of nonsingular points")
    if a.is_infinity:
        return b
    if b.is_infinity:
        return a
    e = residue_epsilon(curve)
    a2 = 1 + e
    if a.x == b.x:
        if a.y == -b.y:
            return REDUCED_INFINITY
        slope = (3 * a.x * a.x + 2 * a2 * a.x + e) / (2 * a.y)
    else:
        slope = (b.y - a.y) / (b.x - a.x)
    x3 = slope * slope - a2 - a.x - b.x
    y3 = slope * (a.x - x3) - a.y
    return _reduced(curve, x3, y3)


def reduced_neg(a: ReducedPoint) -> ReducedPoint:
    if a.is_infinity:
        return a
    return ReducedPoint(a.x, -a.y, a.singular)


__all__ = [
    "REDUCED_INFINITY",
    "ReducedPoint",
    "ReductionType",
    "e0_membership",
    "e1_membership",
    "reduce_point",
    "reduced_add",
    "reduced_contains",
    "reduced_neg",
    "reduction_type",
    "residue_epsilon",
    "singular_point",
]
