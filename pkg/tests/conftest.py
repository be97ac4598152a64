from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from puiseux_ec.parser import parse_series
from puiseux_ec.puiseux import PuiseuxNumber

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

exponents = st.fractions(min_value=-3, max_value=3, max_denominator=4)
coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=9).filter(bool)


@st.composite
def series(draw, exact=None, max_terms=4):
    """Nonzero series with rational terms and, sometimes, a horizon."""
    exps = sorted(draw(st.sets(exponents, min_size=1, max_size=max_terms)))
    terms = [(e, draw(coefficients)) for e in exps]
    if exact is None:
        exact = draw(st.booleans())
    if exact:
        return PuiseuxNumber.from_terms(terms)
    gap = draw(st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3)]))
    return PuiseuxNumber.from_terms(terms, exps[-1] + gap)


@pytest.fixture
def P():
    return parse_series
