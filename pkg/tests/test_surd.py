"""Surd arithmetic against a 50-digit mpmath oracle."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from puiseux_ec.errors import NegativeRadicand
from puiseux_ec.parser import parse_coefficient
from puiseux_ec.surd import Surd, coeff_sign, surd_sqrt

mpmath.mp.dps = 50

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)
positive = st.fractions(min_value=Fraction(1, 12), max_value=30, max_denominator=12)


def mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpf(c.numerator) if isinstance(c, int) else None


@st.composite
def surds(draw):
    """``a + b sqrt(d1) + c sqrt(d2)`` together with its mpmath value."""
    a, b, c = draw(rationals), draw(rationals), draw(rationals)
    d1, d2 = draw(positive), draw(positive)
    value = a + b * surd_sqrt(d1) + c * surd_sqrt(d2)
    oracle = mp(a) + mp(b) * mpmath.sqrt(mp(d1)) + mp(c) * mpmath.sqrt(mp(d2))
    return value, oracle


def close(c, oracle) -> bool:
    return abs(mpmath.mpf(float(c)) - oracle) <= 1e-12 * max(1, abs(oracle))


def test_rational_squares_stay_rational():
    assert surd_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert isinstance(surd_sqrt(Fraction(9, 4)), Fraction)


def test_radicand_normalisation():
    assert str(surd_sqrt(12)) == "2*sqrt(3)"
    assert str(surd_sqrt(Fraction(1, 2))) == "1/2*sqrt(2)"


def test_sqrt2_squared_is_two():
    r = surd_sqrt(2)
    assert r * r == 2 and isinstance(r * r, Fraction)


def test_nested_radical():
    # sqrt(3 + 2 sqrt 2) = 1 + sqrt 2 denests exactly
    r = surd_sqrt(3 + 2 * surd_sqrt(2))
    assert r == 1 + surd_sqrt(2)


def test_negative_radicand():
    with pytest.raises(NegativeRadicand):
        surd_sqrt(Fraction(-1))
    with pytest.raises(NegativeRadicand):
        surd_sqrt(1 - surd_sqrt(2))


def test_parse_round_trip():
    c = 1 + surd_sqrt(2) * surd_sqrt(surd_sqrt(2))
    assert parse_coefficient(str(c)) == c


@given(surds(), surds())
def test_field_operations(p, q):
    (x, xo), (y, yo) = p, q
    assert close(x + y, xo + yo)
    assert close(x - y, xo - yo)
    assert close(x * y, xo * yo)
    if y != 0:
        assert close(x / y, xo / yo)


@given(surds())
def test_sign_matches_oracle(p):
    x, xo = p
    if abs(xo) > 1e-30:
        assert coeff_sign(x) == (1 if xo > 0 else -1)
    else:
        assert x == 0


@given(surds())
def test_sqrt_matches_oracle(p):
    x, xo = p
    x, xo = (x, xo) if xo >= 0 else (-x, -xo)
    r = surd_sqrt(x)
    assert close(r, mpmath.sqrt(xo))
    assert r * r == x


@given(surds())
def test_normalised_surds_are_nonzero(p):
    x, _ = p
    if isinstance(x, Surd):
        assert x != 0 and bool(x)
