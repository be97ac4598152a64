"""Seeded random points for property checks.

A sample has ``x = c t^v + d t^(v + delta)`` with small rational ``c > 0``
and ``d``.  The leading coefficient of ``x(x+1)(x+eps)`` decides whether
``y`` has rational coefficients, so ``c`` is drawn from a parametrisation
that makes it a square whenever the valuation regime allows one.
"""

from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction

from .curve import CurvePoint, MinimalCurve, lift_y
from .puiseux import PuiseuxNumber

SAMPLE_WINDOW = 4

DEFAULT_VALUATIONS = tuple(
    Fraction(v) for v in ("-3", "-2", "-1", "-1/2", "0", "1/4", "1/2", "3/4")
)


def _small(rng: random.Random, lo: int = 1, hi: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, hi))


def _square_leading(curve: MinimalCurve, v: Fraction, rng: random.Random) -> Fraction:
    """A leading coefficient ``c > 0`` for ``x = c t^v`` whose cubic has a
    rational square leading coefficient, when one is easy to produce."""
    eps = curve.epsilon
    w = eps.valuation()
    e = eps.leading_coefficient
    u = _small(rng)
    if v < 0:
        return u * u
    if v == 0:
        if w > 0:
            # c^2 (c + 1): c = u^2 - 1 with u > 1
            return (1 + u) ** 2 - 1
        return u  # c(c+1)(c+eps0): generally no rational square
    if v < w:
        return u  # leading coefficient c^2
    if v == w:
        # c (c + e) = (m c)^2 for c = e / (m^2 - 1)
        m = 1 + u
        return e / (m * m - 1)
    if isinstance(e, Fraction):
        return e * u * u  # c e = (e u)^2
    return u


def _eps_valuation(curve: MinimalCurve) -> Fraction:
    return Fraction(curve.epsilon.valuation())


def random_x(
    curve: MinimalCurve, v, rng: random.Random, *, extra_terms: int = 1
) -> PuiseuxNumber:
    v = Fraction(v)
    terms = [(v, _square_leading(curve, v, rng))]
    step = v
    for _ in range(extra_terms):
        step += rng.choice((Fraction(1, 2), Fraction(1)))
        d = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if d:
            terms.append((step, d))
    return PuiseuxNumber.from_terms(terms)


def random_point(
    curve: MinimalCurve,
    rng: random.Random,
    valuation=None,
    branch: int | None = None,
    *,
    valuations=DEFAULT_VALUATIONS,
    extra_terms: int = 1,
    window="auto",
) -> CurvePoint:
    """A point of ``E(K)^0`` with ``v(x) = valuation`` on the given branch
    (both drawn at random when omitted).

    ``y`` is cut ``window`` exponent units above its valuation: long series
    make every later operation quadratically slower while valuation checks
    only look at the first few terms.  The default ``"auto"`` widens the cut
    by ``2|v| + v(eps)``, the cancellation a sum with such a point can
    suffer; ``window=None`` keeps the curve's own precision.
    """
    if valuation is None:
        valuation = rng.choice(tuple(valuations))
    if branch is None:
        branch = rng.choice((1, -1))
    x = random_x(curve, valuation, rng, extra_terms=extra_terms)
    if window is None:
        return lift_y(curve, x, branch)
    if window == "auto":
        window = SAMPLE_WINDOW + 2 * abs(Fraction(valuation)) + _eps_valuation(curve)
    ctx = replace(curve.precision, window=window)
    p = lift_y(curve, x, branch, ctx)
    return CurvePoint(x, p.y.truncate(p.y.valuation() + Fraction(window)))


def random_series(
    rng: random.Random,
    *,
    max_terms: int = 4,
    exponents=(Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0),
               Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)),
    horizon_chance: float = 0.3,
) -> PuiseuxNumber:
    """A nonzero series with a few rational terms and sometimes a horizon."""
    count = rng.randint(1, max_terms)
    chosen = sorted(rng.sample(list(exponents), count))
    terms = []
    for e in chosen:
        c = Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 5))
        terms.append((e, c))
    horizon = None
    if rng.random() < horizon_chance:
        horizon = chosen[-1] + rng.choice((Fraction(1, 2), Fraction(1), Fraction(2)))
    if horizon is None:
        return PuiseuxNumber.from_terms(terms)
    return PuiseuxNumber.from_terms(terms, horizon)


def sub_rng(seed: int, index: int) -> random.Random:
    """Independent per-trial generator; trial ``index`` never depends on the
    others, so suites can be split or reordered."""
    return random.Random(seed * 1_000_003 + index)
