"""Quotients ``G/G00`` of the identity component and of its truncations.

A context is either the whole component ``E(K)^0`` or its truncation
``[-S, S)`` by a point ``S`` of the upper branch, ordered by the orientation
key.  For every case this module provides

* the ``G00`` criterion, as a level-``n`` predicate and in the collapsed
  form it takes in the model field (rational exponents are divisible, so
  ``v < c/n`` for every ``n`` means ``v <= 0`` when ``c > 0``);
* a class map sending ``G`` onto a group living either in the value group
  (exponents) or in the residue field (coefficients);
* the classifier recording which of the two happens.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .curve import (
    CurvePoint,
    MinimalCurve,
    add_points,
    double_point,
    neg_point,
    on_component,
    orientation_compare,
    sub_points,
)
from .errors import InvalidTruncationPoint, OutsideTruncation, WrongCase
from .puiseux import INF, ONE, PuiseuxNumber
from .reduction import ReductionType, reduce_point, reduction_type
from .surd import Coefficient


class CaseLabel(enum.Enum):
    FULL_GOOD_OR_NONSPLIT = "FullGoodOrNonsplit"
    FULL_SPLIT = "FullSplit"
    TRUNC1 = "Trunc1_OutsideG00"
    TRUNC2 = "Trunc2_NegVal"
    TRUNC3 = "Trunc3_SplitPosVal"
    TRUNC4 = "Trunc4_SplitZeroVal"


class Internality(enum.Enum):
    VALUE_GROUP = "ValueGroup"
    RESIDUE_FIELD = "ResidueField"


class Witness(enum.Enum):
    REDUCTION_REPRESENTATIVE = "ReductionRepresentative"
    FSTAR = "FStarToMultTruncation"
    RESIDUE_COORDINATES = "ResidueCoordinates"


# --- contexts ----------------------------------------------------------------


@dataclass(frozen=True)
class TruncationContext:
    """``G = E(K)^0`` when ``s`` is None, else ``[-s, s)`` with ``y_s > 0``."""

    curve: MinimalCurve
    s: CurvePoint | None = None

    def __post_init__(self):
        s = self.s
        if s is None:
            return
        if s.is_infinity or not on_component(s):
            raise InvalidTruncationPoint("S must lie on the identity component")
        if s.x.is_exact_zero:
            raise InvalidTruncationPoint("S must differ from T2")
        if s.y.sign() <= 0:
            raise InvalidTruncationPoint("S must lie on the upper branch")

    @classmethod
    def full(cls, curve: MinimalCurve) -> TruncationContext:
        return cls(curve)

    @classmethod
    def truncated(cls, curve: MinimalCurve, s: CurvePoint) -> TruncationContext:
        return cls(curve, s)

    @property
    def is_full(self) -> bool:
        return self.s is None

    @property
    def scope(self) -> str:
        return "full" if self.is_full else "truncated"

    def contains(self, p: CurvePoint) -> bool:
        """Membership of ``p`` in ``G``."""
        if not on_component(p):
            return False
        if self.s is None:
            return True
        if not p.is_infinity and p.x.is_exact_zero:
            return False
        lo, hi = neg_point(self.s), self.s
        return orientation_compare(self.curve, lo, p) <= 0 < orientation_compare(
            self.curve, hi, p
        )


def case_label(ctx: TruncationContext) -> CaseLabel:
    kind = reduction_type(ctx.curve)
    split = kind is ReductionType.SPLIT
    if ctx.is_full:
        return CaseLabel.FULL_SPLIT if split else CaseLabel.FULL_GOOD_OR_NONSPLIT
    v = ctx.s.x.valuation()
    if v < 0:
        return CaseLabel.TRUNC2
    if not split:
        return CaseLabel.TRUNC1
    return CaseLabel.TRUNC4 if v == 0 else CaseLabel.TRUNC3


# --- multiplicative truncations ----------------------------------------------


@dataclass(frozen=True)
class MultTruncation:
    """``[1/b, b)`` under multiplication modulo ``b^2``."""

    b: PuiseuxNumber

    def __post_init__(self):
        if self.b.compare(ONE) <= 0:
            raise ValueError("a multiplicative truncation needs b > 1")

    @property
    def is_small(self) -> bool:
        """``v(b) = 0``: the truncation stays inside the finite units."""
        return self.b.valuation() == 0

    def contains(self, x: PuiseuxNumber) -> bool:
        return self.b.inverse().compare(x) <= 0 < self.b.compare(x)

    def reduce(self, x: PuiseuxNumber) -> PuiseuxNumber:
        b = self.b
        if x.compare(b) >= 0:
            return x * (b * b).inverse()
        if x.compare(b.inverse()) < 0:
            return x * b * b
        return x

    def mul(self, x, y) -> PuiseuxNumber:
        return self.reduce(PuiseuxNumber.coerce(x) * PuiseuxNumber.coerce(y))

    def inverse(self, x) -> PuiseuxNumber:
        return self.reduce(PuiseuxNumber.coerce(x).inverse())

    def div(self, x, y) -> PuiseuxNumber:
        return self.mul(x, self.inverse(y))


def mult_truncated_mul(h: MultTruncation, x, y) -> PuiseuxNumber:
    return h.mul(x, y)


def h00_member(h: MultTruncation, x, n: int) -> bool:
    """Level ``n`` of ``H00``: ``|v(x)| < |v(b)|/n``; for a small truncation
    the infinitesimal neighbourhood ``v(x - 1) > 0``."""
    x = PuiseuxNumber.coerce(x)
    vb = h.b.valuation()
    if vb == 0:
        return (x - 1).valuation() > 0
    return abs(x.valuation()) < abs(vb) / n


def target_truncation(ctx: TruncationContext) -> MultTruncation:
    label = case_label(ctx)
    curve = ctx.curve
    if label is CaseLabel.FULL_SPLIT:
        return MultTruncation(curve.epsilon.inverse(curve.precision))
    if label is CaseLabel.TRUNC3:
        return MultTruncation(ctx.s.x.inverse(curve.precision))
    if label is CaseLabel.TRUNC4:
        return MultTruncation(_nodal_coordinate(curve, ctx.s))
    raise WrongCase(f"{label.value} has no multiplicative target")


# --- G00 ---------------------------------------------------------------------


def _v(p: CurvePoint):
    return -INF if p.is_infinity else p.x.valuation()


def g00_member(ctx: TruncationContext, p: CurvePoint, n: int | None = None) -> bool:
    """Level-``n`` predicate of ``G00``; ``n=None`` gives the collapsed form."""
    label = case_label(ctx)
    v = _v(p)
    eps = ctx.curve.epsilon
    if label is CaseLabel.FULL_SPLIT:
        return v <= 0 if n is None else v < eps.valuation() / n
    if label is CaseLabel.TRUNC3:
        vs = ctx.s.x.valuation()
        return v <= 0 if n is None else v < vs / n
    if label is CaseLabel.TRUNC2:
        return v < ctx.s.x.valuation()
    return v < 0


def g00_criterion(ctx: TruncationContext) -> str:
    """Human-readable form of the criterion used by :func:`g00_member`."""
    label = case_label(ctx)
    if label is CaseLabel.FULL_SPLIT:
        return "v(x_P) < v(eps)/n for all n  (collapsed: v(x_P) <= 0)"
    if label is CaseLabel.TRUNC3:
        return "v(x_P) < v(x_S)/n for all n  (collapsed: v(x_P) <= 0)"
    if label is CaseLabel.TRUNC2:
        return "v(x_P) < v(x_S)"
    return "v(x_P) < 0"


def t2_class_member(curve: MinimalCurve, p: CurvePoint, n: int) -> bool:
    """Level ``n`` of the ``G00``-class of ``T2`` in the split case."""
    if reduction_type(curve) is not ReductionType.SPLIT:
        raise WrongCase("the T2 class criterion is for split reduction")
    return _v(p) >= Fraction(n - 1, n) * curve.epsilon.valuation()


# --- class maps ----------------------------------------------------------------


def _nodal_coordinate(curve: MinimalCurve, p: CurvePoint) -> PuiseuxNumber:
    """``(y + x)/(y - x)``: the reduced node's tangents are ``y = +-x``."""
    if p.is_infinity:
        return ONE
    return (p.y + p.x) * (p.y - p.x).inverse(curve.precision)


def f_star(ctx: TruncationContext, p: CurvePoint) -> PuiseuxNumber:
    """The map ``G -> H`` of the split-type cases."""
    label = case_label(ctx)
    curve = ctx.curve
    if label is CaseLabel.TRUNC4:
        return _nodal_coordinate(curve, p)
    if label is CaseLabel.FULL_SPLIT:
        low = curve.epsilon
    elif label is CaseLabel.TRUNC3:
        low = ctx.s.x
    else:
        raise WrongCase(f"f* is not defined for {label.value}")
    if p.is_infinity:
        return ONE
    x = p.x
    if x.compare(ONE) >= 0:
        return ONE
    if x.compare(low) <= 0:
        return low
    if p.y.sign() >= 0:
        return x.inverse(curve.precision)
    return x


def residue_coordinates(ctx: TruncationContext, p: CurvePoint) -> tuple[int, Coefficient]:
    """``(sign y_P, st(x_P / u))`` with ``u`` the leading monomial of ``x_S``;
    the ``G00`` class is ``(0, 0)``."""
    if case_label(ctx) is not CaseLabel.TRUNC2:
        raise WrongCase("residue coordinates belong to the negative-valuation truncation")
    if g00_member(ctx, p):
        return (0, Fraction(0))
    u = ctx.s.x.leading_term()
    return (p.y.sign(), (p.x * u.inverse()).standard_part())


def quotient_coordinate(ctx: TruncationContext, p: CurvePoint):
    """Canonical representative of the ``G00``-class of ``p``.

    Value-group cases give ``v(f*(P)) / v(b)`` in ``[-1, 1)``, read modulo 2
    (``T2`` sits at ``-1``).  Residue-field cases give a reduced point, the
    residue coordinates, or ``st(f*(P))`` for the zero-valuation truncation.
    """
    label = case_label(ctx)
    if label in (CaseLabel.FULL_SPLIT, CaseLabel.TRUNC3):
        h = target_truncation(ctx)
        return f_star(ctx, p).valuation() / h.b.valuation()
    if label is CaseLabel.TRUNC2:
        return residue_coordinates(ctx, p)
    if label is CaseLabel.TRUNC4:
        if p.is_infinity or g00_member(ctx, p):
            return Fraction(1)
        return f_star(ctx, p).standard_part()
    return reduce_point(ctx.curve, p)


# --- truncated group law --------------------------------------------------------


def truncated_add(ctx: TruncationContext, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    """``p (+) q`` folded back into ``[-S, S)`` by ``-+[2]S``."""
    if ctx.s is None:
        raise WrongCase("truncated_add needs a truncation point")
    curve, s = ctx.curve, ctx.s
    for z in (p, q):
        if not ctx.contains(z):
            raise OutsideTruncation(f"{z} is not in [-S, S)")
    r = add_points(curve, p, q)
    bp, bq, br = _branch(p), _branch(q), _branch(r)
    # Two summands on one branch can carry the sum past T2 onto the other.
    if bp > 0 and bq > 0 and br in (-1, 2):
        return sub_points(curve, r, double_point(curve, s))
    if bp < 0 and bq < 0 and br in (1, 2):
        return add_points(curve, r, double_point(curve, s))
    if br == 2:
        return r
    if orientation_compare(curve, r, s) >= 0:
        return sub_points(curve, r, double_point(curve, s))
    if orientation_compare(curve, r, neg_point(s)) < 0:
        return add_points(curve, r, double_point(curve, s))
    return r


def _branch(p: CurvePoint) -> int:
    """1 upper, -1 lower, 0 for ``O``, 2 for ``T2``."""
    if p.is_infinity:
        return 0
    if p.x.is_exact_zero:
        return 2
    return p.y.sign()


# --- classification ---------------------------------------------------------


@dataclass(frozen=True)
class QuotientClassification:
    reduction_type: ReductionType
    case_label: CaseLabel
    one_based: bool
    internality: Internality
    witness: Witness
    notes: tuple[str, ...] = field(default=())


def classify(ctx: TruncationContext) -> QuotientClassification:
    kind = reduction_type(ctx.curve)
    label = case_label(ctx)
    notes: tuple[str, ...] = ()
    if label in (CaseLabel.FULL_SPLIT, CaseLabel.TRUNC3):
        if label is CaseLabel.TRUNC3:
            notes = ("f* clamps points with x_P <= x_S to x_S",)
        return QuotientClassification(
            kind, label, True, Internality.VALUE_GROUP, Witness.FSTAR, notes
        )
    if label is CaseLabel.TRUNC2:
        witness = Witness.RESIDUE_COORDINATES
    elif label is CaseLabel.TRUNC4:
        witness = Witness.FSTAR
        notes = ("f* is the nodal coordinate (y+x)/(y-x) into a small truncation",)
    else:
        witness = Witness.REDUCTION_REPRESENTATIVE
    return QuotientClassification(
        kind, label, False, Internality.RESIDUE_FIELD, witness, notes
    )


__all__ = [
    "CaseLabel",
    "Internality",
    "MultTruncation",
    "QuotientClassification",
    "TruncationContext",
    "Witness",
    "case_label",
    "classify",
    "f_star",
    "g00_criterion",
    "g00_member",
    "h00_member",
    "mult_truncated_mul",
    "quotient_coordinate",
    "residue_coordinates",
    "t2_class_member",
    "target_truncation",
    "truncated_add",
]
