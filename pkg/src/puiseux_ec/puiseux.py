"""Truncated Puiseux series in an infinitesimal ``t``.

A :class:`PuiseuxNumber` is a finite sum ``sum c_i t^(e_i)`` with exact rational
exponents and exact real algebraic coefficients, together with a *horizon*
``h``: every term with exponent below ``h`` is known exactly and nothing is
known at or beyond it.  ``h = inf`` marks an exact element.

The valuation is the leading exponent, the sign is the sign of the leading
coefficient (``t`` is a positive infinitesimal), and the standard part is the
coefficient of ``t^0``.  Any question whose answer depends on terms beyond
the horizon raises :class:`~puiseux_ec.errors.IndeterminateAtHorizon`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    DenominatorOverflow,
    DivisionByZero,
    IndeterminateAtHorizon,
    NegativeRadicand,
    NotFinite,
)
from .surd import Coefficient, Surd, coeff_sign, surd_sqrt

INF = math.inf

Exponent = Fraction
Horizon = Union[Fraction, float]

WINDOW_ENV = "PUISEUX_EC_WINDOW"


@dataclass(frozen=True)
class PrecisionContext:
    """Read-only precision settings.

    ``window`` is the relative precision (in exponent units) produced by
    :meth:`PuiseuxNumber.inverse` and :meth:`PuiseuxNumber.sqrt`; exponent
    denominators may not exceed ``2 ** denominator_bits``.
    """

    window: Fraction = Fraction(16)
    denominator_bits: int = 8

    def __post_init__(self):
        object.__setattr__(self, "window", Fraction(self.window))
        if self.window <= 0:
            raise ValueError("precision window must be positive")

    @property
    def max_denominator(self) -> int:
        return 1 << self.denominator_bits


def _context_from_env() -> PrecisionContext:
    raw = os.environ.get(WINDOW_ENV)
    if raw:
        return PrecisionContext(window=Fraction(raw))
    return PrecisionContext()


DEFAULT_CONTEXT = _context_from_env()


def _ctx(ctx: PrecisionContext | None) -> PrecisionContext:
    return DEFAULT_CONTEXT if ctx is None else ctx


def _is_zero_coeff(c) -> bool:
    return not isinstance(c, Surd) and c == 0


def _normalise(items: Iterable[tuple[Fraction, Coefficient]], horizon: Horizon):
    acc: dict[Fraction, Coefficient] = {}
    for e, c in items:
        if type(e) is not Fraction:
            e = Fraction(e)
        if e >= horizon:
            continue
        if isinstance(c, int):
            c = Fraction(c)
        acc[e] = acc[e] + c if e in acc else c
    return tuple((e, c) for e, c in sorted(acc.items()) if not _is_zero_coeff(c))


def _merge(a, b, horizon: Horizon):
    """Sum of two normalised term tuples, cut at ``horizon``."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na or j < nb:
        if j >= nb or (i < na and a[i][0] < b[j][0]):
            e, c = a[i]
            i += 1
        elif i >= na or b[j][0] < a[i][0]:
            e, c = b[j]
            j += 1
        else:
            e = a[i][0]
            c = a[i][1] + b[j][1]
            i += 1
            j += 1
            if _is_zero_coeff(c):
                continue
        if e >= horizon:
            break
        out.append((e, c))
    return tuple(out)


@dataclass(frozen=True, eq=True)
class PuiseuxNumber:
    """Element of the model field; see the module docstring for semantics.

    Equality (``==``) is structural: same known terms, same horizon.  Use
    :meth:`compare` or :meth:`agrees_with` for questions about values.
    """

    terms: tuple[tuple[Fraction, Coefficient], ...] = ()
    horizon: Horizon = INF

    # construction -----------------------------------------------------------

    @classmethod
    def from_terms(
        cls,
        terms: Mapping[Fraction, Coefficient] | Iterable[tuple[Fraction, Coefficient]],
        horizon: Horizon = INF,
    ) -> PuiseuxNumber:
        if isinstance(terms, Mapping):
            terms = terms.items()
        if horizon != INF:
            horizon = Fraction(horizon)
        return cls(_normalise(terms, horizon), horizon)

    @classmethod
    def constant(cls, c) -> PuiseuxNumber:
        return cls.from_terms([(Fraction(0), c)])

    @classmethod
    def monomial(cls, c, exponent) -> PuiseuxNumber:
        return cls.from_terms([(Fraction(exponent), c)])

    @classmethod
    def big_o(cls, exponent) -> PuiseuxNumber:
        """The element known to be zero below ``t^exponent`` and nothing more."""
        return cls((), Fraction(exponent))

    @classmethod
    def coerce(cls, value) -> PuiseuxNumber:
        if isinstance(value, PuiseuxNumber):
            return value
        if isinstance(value, (int, Fraction, Surd)):
            return cls.constant(value)
        raise TypeError(f"cannot interpret {value!r} as a PuiseuxNumber")

    # basic predicates --------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.horizon == INF

    @property
    def is_exact_zero(self) -> bool:
        return not self.terms and self.horizon == INF

    @property
    def is_indeterminate(self) -> bool:
        """No known term but a finite horizon: zero as far as can be seen."""
        return not self.terms and self.horizon != INF

    def _require_leading(self):
        if not self.terms:
            raise IndeterminateAtHorizon(
                f"no known term below the horizon t^{self.horizon}"
            )
        return self.terms[0]

    @property
    def leading_exponent(self) -> Fraction:
        return self._require_leading()[0]

    @property
    def leading_coefficient(self) -> Coefficient:
        return self._require_leading()[1]

    def leading_term(self) -> PuiseuxNumber:
        e, c = self._require_leading()
        return PuiseuxNumber(((e, c),))

    def valuation(self) -> Horizon:
        """Leading exponent, or ``inf`` for the exact zero."""
        if self.is_exact_zero:
            return INF
        return self.leading_exponent

    def _valuation_bound(self) -> Horizon:
        """A lower bound for the valuation that is always defined."""
        return self.terms[0][0] if self.terms else self.horizon

    def sign(self) -> int:
        if self.is_exact_zero:
            return 0
        return coeff_sign(self.leading_coefficient)

    def coefficient(self, exponent) -> Coefficient:
        exponent = Fraction(exponent)
        if exponent >= self.horizon:
            raise IndeterminateAtHorizon(f"coefficient of t^{exponent} lies beyond the horizon")
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    def standard_part(self) -> Coefficient:
        """Coefficient of ``t^0`` of an element of non-negative valuation."""
        if self.terms and self.terms[0][0] < 0:
            raise NotFinite(f"valuation {self.terms[0][0]} < 0 has no standard part")
        if self.horizon <= 0:
            raise IndeterminateAtHorizon("standard part needs the horizon above t^0")
        return self.coefficient(0)

    def is_rational(self) -> bool:
        return all(not isinstance(c, Surd) for _, c in self.terms)

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other) -> PuiseuxNumber:
        try:
            other = PuiseuxNumber.coerce(other)
        except TypeError:
            return NotImplemented
        h = min(self.horizon, other.horizon)
        return PuiseuxNumber(_merge(self.terms, other.terms, h), h)

    __radd__ = __add__

    def __neg__(self) -> PuiseuxNumber:
        return PuiseuxNumber(tuple((e, -c) for e, c in self.terms), self.horizon)

    def __sub__(self, other) -> PuiseuxNumber:
        try:
            other = PuiseuxNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> PuiseuxNumber:
        return PuiseuxNumber.coerce(other) - self

    def __mul__(self, other) -> PuiseuxNumber:
        if isinstance(other, (int, Fraction, Surd)):
            if _is_zero_coeff(other):
                return ZERO
            return PuiseuxNumber(tuple((e, c * other) for e, c in self.terms), self.horizon)
        if not isinstance(other, PuiseuxNumber):
            return NotImplemented
        if self.is_exact_zero or other.is_exact_zero:
            return ZERO
        h = min(
            self._valuation_bound() + other.horizon,
            other._valuation_bound() + self.horizon,
        )
        return PuiseuxNumber(_convolve(self.terms, other.terms, h), h)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PuiseuxNumber:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other) -> PuiseuxNumber:
        if isinstance(other, (int, Fraction, Surd)):
            if _is_zero_coeff(other):
                raise DivisionByZero("division by exact zero")
            return self * (Fraction(1) / other)
        if not isinstance(other, PuiseuxNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> PuiseuxNumber:
        return PuiseuxNumber.coerce(other) * self.inverse()

    def truncate(self, horizon) -> PuiseuxNumber:
        h = min(self.horizon, Fraction(horizon))
        return PuiseuxNumber(tuple((e, c) for e, c in self.terms if e < h), h)

    def inverse(self, ctx: PrecisionContext | None = None) -> PuiseuxNumber:
        """Multiplicative inverse to relative precision ``ctx.window``."""
        if self.is_exact_zero:
            raise DivisionByZero("inverse of exact zero")
        e, c = self._require_leading()
        unit, rel = _unit_part(self, ctx)
        ci = 1 / c
        if not unit:
            return PuiseuxNumber(((-e, ci),), -e + rel)
        r = _unit_inverse(unit, rel)
        return PuiseuxNumber(
            tuple((x - e, ci * k) for x, k in r), -e + rel
        )

    def sqrt(self, ctx: PrecisionContext | None = None) -> PuiseuxNumber:
        """Positive square root to relative precision ``ctx.window``."""
        ctx = _ctx(ctx)
        if self.is_exact_zero:
            return ZERO
        e, c = self._require_leading()
        if coeff_sign(c) < 0:
            raise NegativeRadicand(f"sqrt of negative element {self}")
        half = e / 2
        if half.denominator > ctx.max_denominator:
            raise DenominatorOverflow(
                f"exponent {half} exceeds the denominator cap {ctx.max_denominator}"
            )
        root_c = surd_sqrt(c)
        unit, rel = _unit_part(self, ctx)
        if not unit:
            return PuiseuxNumber(((half, root_c),), half + rel)
        r = _unit_inverse_sqrt(unit, rel)
        # sqrt(1 + u) = (1 + u) / sqrt(1 + u)
        s = _convolve(((Fraction(0), Fraction(1)),) + unit, r, rel)
        return PuiseuxNumber(tuple((x + half, root_c * k) for x, k in s), half + rel)

    # order ------------------------------------------------------------------

    def compare(self, other) -> int:
        """-1, 0 or 1 as ``self`` is below, equal to or above ``other``.

        0 is returned only for exact equality; values that agree up to the
        common horizon raise :class:`IndeterminateAtHorizon`.
        """
        return (self - PuiseuxNumber.coerce(other)).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def agrees_with(self, other) -> bool:
        """True when the two elements share every term below their common horizon."""
        return not (self - PuiseuxNumber.coerce(other)).terms

    # display ----------------------------------------------------------------

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"PuiseuxNumber({format_series(self)!r})"


ZERO = PuiseuxNumber()
ONE = PuiseuxNumber.constant(1)
T = PuiseuxNumber.monomial(1, 1)


def _unit_part(a: PuiseuxNumber, ctx: PrecisionContext | None):
    """Split ``a = c t^e (1 + u)``: returns ``(u terms, relative precision)``."""
    ctx = _ctx(ctx)
    e, c = a.terms[0]
    ci = 1 / c
    unit = tuple((x - e, k * ci) for x, k in a.terms[1:])
    known = a.horizon - e
    if not unit:
        return unit, known
    return unit, min(ctx.window, known)


def _unit_inverse(unit, rel: Fraction):
    """Terms of ``1 / (1 + u)`` below ``t^rel`` by Newton's iteration."""
    one = ((Fraction(0), Fraction(1)),)
    full = one + unit
    prec = unit[0][0]
    r = one
    while True:
        prec = min(2 * prec, rel)
        # r <- r (2 - (1+u) r)
        e = _convolve(full, r, prec)
        corr = _normalise(((x, -k) for x, k in e), prec)
        corr = _normalise(corr + ((Fraction(0), Fraction(2)),), prec)
        r = _convolve(r, corr, prec)
        if prec >= rel:
            return r


def _unit_inverse_sqrt(unit, rel: Fraction):
    """Terms of ``(1 + u)^(-1/2)`` below ``t^rel`` by Newton's iteration."""
    one = ((Fraction(0), Fraction(1)),)
    full = one + unit
    prec = unit[0][0]
    r = one
    half = Fraction(1, 2)
    while True:
        prec = min(2 * prec, rel)
        # r <- r (3 - (1+u) r^2) / 2
        r2 = _convolve(r, r, prec)
        e = _convolve(full, r2, prec)
        corr = _normalise([(x, -k * half) for x, k in e] + [(Fraction(0), Fraction(3, 2))], prec)
        r = _convolve(r, corr, prec)
        if prec >= rel:
            return r


def _convolve(a, b, limit: Horizon):
    """Product of two ascending term tuples, keeping exponents below ``limit``."""
    if not a or not b:
        return ()
    if all(type(c) is Fraction for _, c in a) and all(type(c) is Fraction for _, c in b):
        return _convolve_rational(a, b, limit)
    acc: dict[Fraction, Coefficient] = {}
    for ea, ca in a:
        if ea + b[0][0] >= limit:
            break
        for eb, cb in b:
            e = ea + eb
            if e >= limit:
                break
            p = ca * cb
            acc[e] = acc[e] + p if e in acc else p
    return tuple((e, c) for e, c in sorted(acc.items()) if not _is_zero_coeff(c))


def _convolve_rational(a, b, limit: Horizon):
    # Integer exponents over a common denominator and integer numerators over
    # a common coefficient denominator keep the inner loop in plain ints.
    lcm_e = 1
    for e, _ in a:
        lcm_e = math.lcm(lcm_e, e.denominator)
    for e, _ in b:
        lcm_e = math.lcm(lcm_e, e.denominator)
    da = 1
    for _, c in a:
        da = math.lcm(da, c.denominator)
    db = 1
    for _, c in b:
        db = math.lcm(db, c.denominator)
    ai = [(e.numerator * (lcm_e // e.denominator), c.numerator * (da // c.denominator)) for e, c in a]
    bi = [(e.numerator * (lcm_e // e.denominator), c.numerator * (db // c.denominator)) for e, c in b]
    if limit == INF:
        lim = None
    else:
        lim = Fraction(limit) * lcm_e
        # exponent sums are integers: e < lim  <=>  e < ceil(lim)
        lim = -((-lim.numerator) // lim.denominator)
    acc: dict[int, int] = {}
    b0 = bi[0][0]
    for ea, na in ai:
        if lim is not None and ea + b0 >= lim:
            break
        for eb, nb in bi:
            e = ea + eb
            if lim is not None and e >= lim:
                break
            acc[e] = acc.get(e, 0) + na * nb
    den = da * db
    return tuple(
        (Fraction(e, lcm_e), Fraction(n, den)) for e, n in sorted(acc.items()) if n
    )


# --- printing ---------------------------------------------------------------


def _format_rational(q: Fraction) -> str:
    return str(q)


def _format_exponent(e: Fraction) -> str:
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    return f"({e})"


def _format_coefficient(c) -> str:
    return str(c)


def format_series(a: PuiseuxNumber) -> str:
    """Canonical text: ascending exponents, lowest terms, optional ``O(t^h)``."""
    parts: list[tuple[int, str]] = []
    for e, c in a.terms:
        neg = coeff_sign(c) < 0
        mag = -c if neg else c
        if e == 0:
            body = _format_coefficient(mag)
        else:
            tp = "t" if e == 1 else f"t^{_format_exponent(e)}"
            body = tp if mag == 1 else f"{_format_coefficient(mag)}*{tp}"
        parts.append((neg, body))
    if a.horizon != INF:
        h = a.horizon
        parts.append((False, "O(t)" if h == 1 else f"O(t^{_format_exponent(h)})"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


# --- function-style API -----------------------------------------------------


def add(a: PuiseuxNumber, b: PuiseuxNumber) -> PuiseuxNumber:
    return a + b


def mul(a: PuiseuxNumber, b: PuiseuxNumber) -> PuiseuxNumber:
    return a * b


def invert(a: PuiseuxNumber, ctx: PrecisionContext | None = None) -> PuiseuxNumber:
    return a.inverse(ctx)


def sqrt(a: PuiseuxNumber, ctx: PrecisionContext | None = None) -> PuiseuxNumber:
    return a.sqrt(ctx)


def valuation(a: PuiseuxNumber) -> Horizon:
    return a.valuation()


def sign_of(a: PuiseuxNumber) -> int:
    return a.sign()


def compare(a, b) -> int:
    return PuiseuxNumber.coerce(a).compare(b)


def standard_part(a: PuiseuxNumber) -> Coefficient:
    return a.standard_part()
