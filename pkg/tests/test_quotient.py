import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from puiseux_ec.curve import (
    INFINITY,
    MinimalCurve,
    add_points,
    bounding_torsion_chain,
    double_point,
    lift_y,
    points_agree,
    sub_points,
)
from puiseux_ec.errors import (
    IndeterminateAtHorizon,
    InvalidTruncationPoint,
    OutsideTruncation,
    WrongCase,
)
from puiseux_ec.parser import parse_series as P
from puiseux_ec.puiseux import PrecisionContext
from puiseux_ec.quotient import (
    CaseLabel,
    Internality,
    MultTruncation,
    TruncationContext,
    Witness,
    case_label,
    classify,
    f_star,
    g00_criterion,
    g00_member,
    h00_member,
    mult_truncated_mul,
    quotient_coordinate,
    residue_coordinates,
    t2_class_member,
    target_truncation,
    truncated_add,
)
from puiseux_ec.reduction import reduce_point
from puiseux_ec.sampling import random_point
from puiseux_ec.suites import context_for

FAST = PrecisionContext(window=8)
seeds = st.integers(0, 10**9)


def curve(eps, window=None):
    return MinimalCurve(P(eps), FAST if window is None else PrecisionContext(window=window))


def at(c, v, branch=1):
    return lift_y(c, P(f"t^({v})"), branch)


# --- contexts ---------------------------------------------------------------------


def test_truncation_point_validation():
    c = curve("t")
    with pytest.raises(InvalidTruncationPoint):
        TruncationContext(c, c.t2)
    with pytest.raises(InvalidTruncationPoint):
        TruncationContext(c, lift_y(c, P("1"), -1))
    with pytest.raises(InvalidTruncationPoint):
        TruncationContext(c, lift_y(c, P("-1/2")))
    with pytest.raises(InvalidTruncationPoint):
        TruncationContext(c, INFINITY)


@pytest.mark.parametrize(
    "eps, trunc, label",
    [("t", None, CaseLabel.FULL_SPLIT), ("1/2", None, CaseLabel.FULL_GOOD_OR_NONSPLIT),
     ("1 - t", None, CaseLabel.FULL_GOOD_OR_NONSPLIT), ("t", "t^(-1)", CaseLabel.TRUNC2),
     ("1/2", "t^(-2)", CaseLabel.TRUNC2), ("1/2", "1", CaseLabel.TRUNC1),
     ("1/2", "t", CaseLabel.TRUNC1), ("t", "t^(1/4)", CaseLabel.TRUNC3),
     ("t", "3", CaseLabel.TRUNC4)],
)
def test_case_labels(eps, trunc, label):
    assert case_label(context_for(curve(eps), trunc)) is label


# --- multiplicative truncation ---------------------------------------------------------


def test_mult_truncation():
    h = MultTruncation(P("t^(-1)"))
    x = P("t^(-1/2)")
    assert mult_truncated_mul(h, 1, x).agrees_with(x)
    prod = mult_truncated_mul(h, x, x)
    assert prod.agrees_with(P("t")) and h.contains(prod)
    with pytest.raises(ValueError):
        MultTruncation(P("1/2"))


@given(st.lists(st.sampled_from([Fraction(k, 4) for k in range(-3, 4)]), min_size=3, max_size=3),
       st.lists(st.fractions(1, 9, max_denominator=5), min_size=3, max_size=3))
def test_mult_truncation_associative(vs, cs):
    h = MultTruncation(P("t^(-1)"))
    x, y, z = (P(f"{c}*t^({v})") for v, c in zip(vs, cs))
    assert all(h.contains(w) for w in (x, y, z))
    lhs = h.mul(h.mul(x, y), z)
    rhs = h.mul(x, h.mul(y, z))
    assert lhs.agrees_with(rhs) and h.contains(lhs)


def test_h00_examples():
    h = MultTruncation(P("t^(-1)"))
    for n in range(1, 6):
        assert h00_member(h, P("1"), n)
        assert h00_member(h, P("2"), n)
    assert not h00_member(h, P("t^(1/2)"), 2)
    assert h00_member(h, P("t^(1/2)"), 1)
    small = MultTruncation(P("3"))
    assert h00_member(small, P("1 + t"), 5) and not h00_member(small, P("2"), 1)


# --- G00 -----------------------------------------------------------------------


def test_g00_full_split():
    ctx = TruncationContext(curve("t"))
    assert not g00_member(ctx, at(ctx.curve, "1/2"), 2)
    for n in range(1, 10):
        assert g00_member(ctx, at(ctx.curve, "-1"), n)
    assert g00_member(ctx, at(ctx.curve, "0"))
    assert not g00_member(ctx, at(ctx.curve, "1/128"))
    assert g00_member(ctx, INFINITY, 3)
    assert "v(eps)/n" in g00_criterion(ctx)


def test_g00_good():
    c = curve("1/2")
    ctx = TruncationContext(c)
    assert g00_member(ctx, lift_y(c, P("t^(-1)")))
    assert not g00_member(ctx, lift_y(c, P("1")))


def test_g00_truncations():
    c = curve("t")
    trunc2 = context_for(c, "t^(-1)")
    assert g00_member(trunc2, at(c, "-2")) and not g00_member(trunc2, at(c, "-1"))
    trunc3 = context_for(c, "t^(1/4)")
    # v(x_S) = 1/4: level n needs v(x_P) < 1/(4n)
    assert g00_member(trunc3, at(c, "1/16"), 3) and not g00_member(trunc3, at(c, "1/16"), 4)
    trunc4 = context_for(c, "3")
    assert g00_member(trunc4, at(c, "-1/2")) and not g00_member(trunc4, lift_y(c, P("4")))


def test_t2_class():
    c = curve("t")
    for n in range(1, 8):
        assert t2_class_member(c, at(c, "1"), n)
    assert not t2_class_member(c, at(c, "1/2"), 3)
    with pytest.raises(WrongCase):
        t2_class_member(curve("1/2"), at(curve("1/2"), "1"), 2)


@given(seeds)
def test_t2_translation_identity(seed):
    c = curve("t")
    p = random_point(c, random.Random(seed))
    d = sub_points(c, p, c.t2)
    assert d.x.valuation() == c.epsilon.valuation() - p.x.valuation()


# --- f* and class coordinates ----------------------------------------------------


def test_f_star_examples():
    c = curve("t^2")
    ctx = TruncationContext(c)
    assert f_star(ctx, lift_y(c, P("2"))) == P("1")
    assert f_star(ctx, lift_y(c, P("t"), -1)).agrees_with(P("t"))
    assert f_star(ctx, lift_y(c, P("t"), 1)).agrees_with(P("t^(-1)"))
    assert f_star(ctx, lift_y(c, P("t^3"))).agrees_with(c.epsilon)
    assert f_star(ctx, INFINITY) == P("1")
    assert target_truncation(ctx).b.agrees_with(P("t^(-2)"))
    with pytest.raises(WrongCase):
        f_star(TruncationContext(curve("1/2")), INFINITY)


def test_trunc4_nodal_f_star():
    c = curve("t")
    ctx = context_for(c, "3")
    h = target_truncation(ctx)
    assert h.is_small
    for x, branch in (("4", 1), ("7", -1), ("3 + t", 1), ("t^(-1)", 1)):
        p = lift_y(c, P(x), branch)
        assert ctx.contains(p) and h.contains(f_star(ctx, p))


def test_residue_coordinates():
    c = curve("t")
    ctx = context_for(c, "t^(-1)")
    assert residue_coordinates(ctx, lift_y(c, P("2*t^(-1) + 1"))) == (1, 2)
    near = [lift_y(c, P(x), b) for x, b in (("3*t^(-1)", 1), ("3*t^(-1) + 5", 1),
                                           ("3*t^(-1)", -1), ("4*t^(-1)", 1))]
    coords = [residue_coordinates(ctx, p) for p in near]
    assert coords[0] == coords[1] != coords[2] and coords[0] != coords[3]
    assert residue_coordinates(ctx, at(c, "-3")) == (0, 0)
    with pytest.raises(WrongCase):
        residue_coordinates(TruncationContext(c), at(c, "1"))


def test_quotient_coordinate_examples():
    c = curve("t")
    ctx = TruncationContext(c)
    assert abs(quotient_coordinate(ctx, c.t2)) == 1
    assert quotient_coordinate(ctx, at(c, "-2")) == 0
    good = curve("1/2")
    p = lift_y(good, P("1 + t"))
    assert quotient_coordinate(TruncationContext(good), p) == reduce_point(good, p)


def _mod2(a):
    a = a % 2
    return a - 2 if a >= 1 else a


GRID = [Fraction(k, 8) for k in range(-8, 24)]


@given(seeds, seeds)
def test_value_group_witness_is_homomorphism(s1, s2):
    c = curve("t^2")
    ctx = TruncationContext(c)
    p = random_point(c, random.Random(s1), valuations=GRID)
    q = random_point(c, random.Random(s2), valuations=GRID)
    try:
        a, b, s = (quotient_coordinate(ctx, z) for z in (p, q, add_points(c, p, q)))
    except IndeterminateAtHorizon:
        return
    assert _mod2(a + b) == _mod2(s)


@given(seeds, st.sampled_from([Fraction(k, 8) for k in range(4, 12)]))
def test_f_star_injective_at_level(seed, vp):
    # P and Q outside G00 and the T2 class for levels up to 4 (eps = t^2)
    c = curve("t^2")
    ctx = TruncationContext(c)
    h = target_truncation(ctx)
    r = random.Random(seed)
    p = random_point(c, r, vp)
    q = random_point(c, r, r.choice([Fraction(k, 8) for k in range(4, 12)]))
    try:
        ratio = abs(h.div(f_star(ctx, p), f_star(ctx, q)).valuation())
        d = sub_points(c, p, q)
    except IndeterminateAtHorizon:
        return
    for n in range(1, 5):
        if ratio < Fraction(2, n):
            assert d.is_infinity or d.x.valuation() < Fraction(2, n)


@settings(max_examples=25)
@given(seeds, st.integers(1, 4))
def test_f_star_well_defined(seed, n):
    c = curve("t^2", window=6)
    ctx = TruncationContext(c)
    h = target_truncation(ctx)
    r = random.Random(seed)
    p = random_point(c, r, valuations=GRID)
    d = random_point(c, r, r.choice([v for v in GRID if v < Fraction(1, n)]))
    try:
        q = sub_points(c, p, d)
        if not g00_member(ctx, sub_points(c, p, q), 2 * n):
            return
        ratio = h.div(f_star(ctx, p), f_star(ctx, q))
    except IndeterminateAtHorizon:
        return
    assert abs(ratio.valuation()) <= Fraction(2, n)


# --- truncated group law ----------------------------------------------------------


def test_truncated_add_identity_and_plain_case():
    c = curve("t")
    ctx = context_for(c, "t^(1/4)")
    p = lift_y(c, P("1"))
    assert points_agree(truncated_add(ctx, p, INFINITY), p)
    q = at(c, "-1", -1)
    assert points_agree(truncated_add(ctx, p, q), add_points(c, p, q))


def test_truncated_add_overflow_by_t2():
    # S = T4: [2]S = T2, so T4-adjacent sums are folded back by T2
    c = curve("t")
    t4 = bounding_torsion_chain(MinimalCurve(P("t")), 2)[0]
    ctx = TruncationContext(c, t4)
    p = lift_y(c, P("t^(1/2) + t"), 1)
    assert ctx.contains(p)
    r = truncated_add(ctx, p, p)
    d = double_point(c, p)
    assert not ctx.contains(d)
    assert ctx.contains(r) and points_agree(r, sub_points(c, d, c.t2))


def test_truncated_add_rejects_outside():
    c = curve("t")
    ctx = context_for(c, "t^(-1)")
    with pytest.raises(OutsideTruncation):
        truncated_add(ctx, at(c, "1"), INFINITY)
    with pytest.raises(WrongCase):
        truncated_add(TruncationContext(c), INFINITY, INFINITY)


def _near_s(c, trunc, rng):
    """A point just inside S on a random branch: larger x is nearer O."""
    v = P(trunc).valuation() + Fraction(1, 2)
    k = Fraction(rng.randint(1, 5), rng.randint(1, 5))
    return lift_y(c, P(trunc) + P(f"{k}*t^({v})"), rng.choice((1, -1)))


@given(seeds, st.sampled_from(["t^(1/4)", "t^(-1)", "2", "t^(1/2)"]), st.booleans())
def test_truncated_add_stays_in_range(seed, trunc, near):
    c = curve("t")
    ctx = context_for(c, trunc)
    r = random.Random(seed)
    if near:
        p, q = _near_s(c, trunc, r), _near_s(c, trunc, r)
    else:
        v_s = P(trunc).valuation()
        vals = [v for v in (Fraction(k, 4) for k in range(-8, 3)) if v < v_s]
        p, q = (random_point(c, r, valuations=vals) for _ in range(2))
    try:
        assert ctx.contains(p) and ctx.contains(q)
        t = truncated_add(ctx, p, q)
        s = add_points(c, p, q)
        two_s = double_point(c, ctx.s)
        wrapped = [sub_points(c, s, two_s), add_points(c, s, two_s)]
    except IndeterminateAtHorizon:
        return
    assert ctx.contains(t)
    if ctx.contains(s):
        assert points_agree(t, s)
    else:
        assert any(points_agree(t, w) for w in wrapped)


# --- classification ------------------------------------------------------------------


def test_classify_examples():
    split = classify(TruncationContext(curve("t")))
    assert (split.case_label, split.one_based, split.internality, split.witness) == (
        CaseLabel.FULL_SPLIT, True, Internality.VALUE_GROUP, Witness.FSTAR)
    good = classify(TruncationContext(curve("1/2")))
    assert (good.one_based, good.internality, good.witness) == (
        False, Internality.RESIDUE_FIELD, Witness.REDUCTION_REPRESENTATIVE)
    t3 = classify(context_for(curve("t"), "t^(1/4)"))
    assert t3.case_label is CaseLabel.TRUNC3 and t3.one_based
    t2 = classify(context_for(curve("t"), "t^(-1)"))
    assert t2.witness is Witness.RESIDUE_COORDINATES


@pytest.mark.parametrize("eps", ["t", "1/2", "1 - t", "t^3", "1/3 + t"])
@pytest.mark.parametrize("trunc", [None, "t^(-2)", "t^(1/3)", "1", "1/2 + t"])
def test_classifier_dichotomy(eps, trunc):
    c = classify(context_for(curve(eps), trunc))
    value_group = c.internality is Internality.VALUE_GROUP
    assert c.one_based == value_group
    assert value_group == (c.case_label in (CaseLabel.FULL_SPLIT, CaseLabel.TRUNC3))
