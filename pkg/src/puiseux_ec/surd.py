"""Exact real algebraic numbers obtained from iterated square roots.

Square roots of positive rationals are generally irrational, so rational
coefficients alone do not give a real closed coefficient field.  Everything
this package needs (halving points, lifting y from x) only ever takes square
roots, so the coefficients live in towers

    Q  <  Q(sqrt d1)  <  Q(sqrt d1)(sqrt d2)  <  ...

where each ``d_i`` is a positive element of the field below it that is not
already a square there.  An element of level ``k`` is stored raw as a pair
``(a, b)`` of level ``k - 1`` elements meaning ``a + b*sqrt(d_k)``; level 0
is a ``gmpy2.mpq``, converted from and to ``Fraction`` at the boundary.
Because no radicand is a square below it, the representation is unique, so
zero testing is structural and signs are decided exactly by the usual norm
trick.

:class:`Surd` wraps a raw value and its tower.  Arithmetic between surds from
unrelated towers first builds their compositum.  Values that fall back into
Q are returned as plain ``Fraction`` objects.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import sqrt as _fsqrt
from typing import Union

import gmpy2
from gmpy2 import mpq

from .errors import NegativeRadicand

Rational = Union[int, Fraction]

_ZERO = mpq(0)
_ONE = mpq(1)
_HALF = mpq(1, 2)
_TWO = mpq(2)


class QuadraticTower:
    """A field ``Q(sqrt d1)...(sqrt dk)``; ``QQ`` is the level-0 root.

    Towers are memoised: adjoining the same radicand twice to the same field
    returns the same child, so equal constructions share one object.
    """

    __slots__ = ("parent", "radicand", "level", "_children", "_joins", "__weakref__")

    def __init__(self, parent: QuadraticTower | None = None, radicand=None):
        self.parent = parent
        self.radicand = radicand
        self.level = 0 if parent is None else parent.level + 1
        self._children: dict = {}
        self._joins: dict = {}

    def adjoin(self, d) -> QuadraticTower:
        child = self._children.get(d)
        if child is None:
            child = QuadraticTower(self, d)
            self._children[d] = child
        return child

    def chain(self) -> list[QuadraticTower]:
        out = []
        f: QuadraticTower | None = self
        while f is not None:
            out.append(f)
            f = f.parent
        out.reverse()
        return out

    def has_ancestor(self, other: QuadraticTower) -> bool:
        f: QuadraticTower | None = self
        while f is not None:
            if f is other:
                return True
            f = f.parent
        return False

    def __repr__(self) -> str:
        if self.parent is None:
            return "QQ"
        return f"{self.parent!r}(sqrt {_format_raw(self.parent, self.radicand)})"


QQ = QuadraticTower()


# --- raw arithmetic ---------------------------------------------------------
# Every function takes the tower the raw operands live in.

_zero_cache = [_ZERO]
_one_cache = [_ONE]


def _zero(level: int):
    while len(_zero_cache) <= level:
        z = _zero_cache[-1]
        _zero_cache.append((z, z))
    return _zero_cache[level]


def _one(level: int):
    while len(_one_cache) <= level:
        k = len(_one_cache)
        _one_cache.append((_one_cache[k - 1], _zero(k - 1)))
    return _one_cache[level]


def _is_zero(level: int, a) -> bool:
    if level == 0:
        return a == 0
    return a == _zero(level)


def _add(f: QuadraticTower, a, b):
    if f.level == 0:
        return a + b
    p = f.parent
    return (_add(p, a[0], b[0]), _add(p, a[1], b[1]))


def _neg(f: QuadraticTower, a):
    if f.level == 0:
        return -a
    p = f.parent
    return (_neg(p, a[0]), _neg(p, a[1]))


def _sub(f: QuadraticTower, a, b):
    if f.level == 0:
        return a - b
    p = f.parent
    return (_sub(p, a[0], b[0]), _sub(p, a[1], b[1]))


def _scale(f: QuadraticTower, a, q: mpq):
    if f.level == 0:
        return a * q
    p = f.parent
    return (_scale(p, a[0], q), _scale(p, a[1], q))


def _mul(f: QuadraticTower, a, b):
    if f.level == 0:
        return a * b
    p = f.parent
    a0, a1 = a
    b0, b1 = b
    lv = p.level
    if _is_zero(lv, a1):
        return (_mul(p, a0, b0), _mul(p, a0, b1))
    if _is_zero(lv, b1):
        return (_mul(p, a0, b0), _mul(p, a1, b0))
    real = _add(p, _mul(p, a0, b0), _mul(p, _mul(p, a1, b1), f.radicand))
    return (real, _add(p, _mul(p, a0, b1), _mul(p, a1, b0)))


def _norm(f: QuadraticTower, a):
    """a * conj(a) in the parent field."""
    p = f.parent
    a0, a1 = a
    return _sub(p, _mul(p, a0, a0), _mul(p, _mul(p, a1, a1), f.radicand))


def _inv(f: QuadraticTower, a):
    if f.level == 0:
        return 1 / a
    p = f.parent
    n_inv = _inv(p, _norm(f, a))
    return (_mul(p, a[0], n_inv), _neg(p, _mul(p, a[1], n_inv)))


def _sign(f: QuadraticTower, a) -> int:
    if f.level == 0:
        return (a > 0) - (a < 0)
    p = f.parent
    sa = _sign(p, a[0])
    sb = _sign(p, a[1])
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # a0 and b*sqrt(d) have opposite signs; the larger square wins.
    return sa * _sign(p, _norm(f, a))


def _rational_sqrt(q) -> mpq | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
    return None


_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % d for d in range(2, int(p**0.5) + 1))]


def _square_split(m) -> tuple[int, int]:
    """``m = a^2 r`` with the square part found by trial division, so that
    ``sqrt(12)`` and ``sqrt(3)`` share the radicand 3."""
    m = gmpy2.mpz(m)
    a = gmpy2.mpz(1)
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > m:
            break
        while m % pp == 0:
            m //= pp
            a *= p
    if gmpy2.is_square(m):
        a *= gmpy2.isqrt(m)
        m = gmpy2.mpz(1)
    return int(a), int(m)


def _sqrt(f: QuadraticTower, a):
    """Non-negative square root of a non-negative ``a`` inside ``f``, or None."""
    if f.level == 0:
        return _rational_sqrt(a)
    p = f.parent
    a0, a1 = a
    lv = p.level
    if _is_zero(lv, a1):
        s = _sqrt(p, a0) if _sign(p, a0) >= 0 else None
        if s is not None:
            return (s, _zero(lv))
        # a0 = r^2 * d  gives  sqrt(a0) = r * sqrt(d)
        q = _mul(p, a0, _inv(p, f.radicand))
        r = _sqrt(p, q) if _sign(p, q) >= 0 else None
        if r is not None:
            return (_zero(lv), r)
        return None
    m = _sqrt(p, _norm(f, a)) if _sign(p, _norm(f, a)) >= 0 else None
    if m is None:
        return None
    half = _HALF
    for cand in (_scale(p, _add(p, a0, m), half), _scale(p, _sub(p, a0, m), half)):
        if _sign(p, cand) <= 0:
            continue
        r = _sqrt(p, cand)
        if r is None:
            continue
        q = _mul(p, a1, _inv(p, _scale(p, r, _TWO)))
        root = (r, q)
        if _sign(f, root) < 0:
            root = _neg(f, root)
        return root
    return None


def _lift(a, from_level: int, to_level: int):
    for lv in range(from_level, to_level):
        a = (a, _zero(lv))
    return a


def _embed(src: QuadraticTower, a, dst: QuadraticTower, gens: list):
    """Image of raw ``a`` from ``src`` in ``dst``; ``gens[i]`` is the image of
    the generator of level ``i + 1``."""
    if src.level == 0:
        return _lift(a, 0, dst.level)
    lo = _embed(src.parent, a[0], dst, gens)
    hi = _embed(src.parent, a[1], dst, gens)
    return _add(dst, lo, _mul(dst, hi, gens[src.level - 1]))


def _join(f1: QuadraticTower, f2: QuadraticTower):
    """Compositum of two towers: returns ``(c, gens)`` with ``c`` a
    descendant of ``f1`` and ``gens`` the images of ``f2``'s generators."""
    hit = f1._joins.get(id(f2))
    if hit is not None and hit[0] is f2:
        return hit[1], hit[2]
    c = f1
    gens: list = []
    for sub in f2.chain()[1:]:
        d = _embed(sub.parent, sub.radicand, c, gens)
        s = _sqrt(c, d)
        if s is None:
            nc = c.adjoin(d)
            gens = [_lift(g, c.level, nc.level) for g in gens]
            c = nc
            s = (_zero(c.level - 1), _one(c.level - 1))
        gens.append(s)
    f1._joins[id(f2)] = (f2, c, gens)
    return c, gens


# --- public wrapper ---------------------------------------------------------


class Surd:
    """An irrational element of some :class:`QuadraticTower`.

    Never construct directly; use :func:`surd_sqrt` and arithmetic.  Results
    that are rational come back as ``Fraction``.
    """

    __slots__ = ("field", "raw")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, field: QuadraticTower, raw):
        self.field = field
        self.raw = raw

    # coercion ---------------------------------------------------------------

    def _pair(self, other):
        """Bring ``self`` and ``other`` into one tower: (tower, raw_self, raw_other)."""
        if isinstance(other, Surd):
            f1, f2 = self.field, other.field
            if f1 is f2:
                return f1, self.raw, other.raw
            if f1.has_ancestor(f2):
                return f1, self.raw, _lift(other.raw, f2.level, f1.level)
            if f2.has_ancestor(f1):
                return f2, _lift(self.raw, f1.level, f2.level), other.raw
            c, gens = _join(f1, f2)
            return (
                c,
                _lift(self.raw, f1.level, c.level),
                _embed(f2, other.raw, c, gens),
            )
        if isinstance(other, (int, Fraction)):
            f = self.field
            return f, self.raw, _lift(mpq(other), 0, f.level)
        return None

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return _make(f, _add(f, a, b))

    __radd__ = __add__

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return _make(f, _sub(f, a, b))

    def __rsub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return _make(f, _sub(f, b, a))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _make(self.field, _scale(self.field, self.raw, mpq(other)))
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return _make(f, _mul(f, a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return _make(self.field, _scale(self.field, self.raw, 1 / mpq(other)))
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return _make(f, _mul(f, a, _inv(f, b)))

    def __rtruediv__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return _make(f, _mul(f, b, _inv(f, a)))

    def __neg__(self):
        return Surd(self.field, _neg(self.field, self.raw))

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        result: Surd | Fraction = Fraction(1)
        base: Surd | Fraction = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # order ------------------------------------------------------------------

    def sign(self) -> int:
        return _sign(self.field, self.raw)

    def _cmp(self, other) -> int | None:
        pr = self._pair(other)
        if pr is None:
            return None
        f, a, b = pr
        return _sign(f, _sub(f, a, b))

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self) -> bool:
        return True  # normalised surds are irrational, hence nonzero

    def __float__(self) -> float:
        return _to_float(self.field, self.raw)

    def __repr__(self) -> str:
        return f"Surd({_format_raw(self.field, self.raw)})"

    def __str__(self) -> str:
        return _format_raw(self.field, self.raw)


def _make(f: QuadraticTower, raw):
    """Wrap ``raw``, dropping top levels whose surd part vanishes."""
    while f.level > 0 and _is_zero(f.level - 1, raw[1]):
        raw = raw[0]
        f = f.parent
    if f.level == 0:
        return Fraction(int(raw.numerator), int(raw.denominator))
    return Surd(f, raw)


def _to_float(f: QuadraticTower, a) -> float:
    if f.level == 0:
        return float(a)
    p = f.parent
    return _to_float(p, a[0]) + _to_float(p, a[1]) * _fsqrt(_to_float(p, f.radicand))


_SIMPLE = re.compile(r"-?\d+(/\d+)?")


def _format_raw(f: QuadraticTower, a) -> str:
    if f.level == 0:
        return str(a)
    p = f.parent
    lv = p.level
    root = f"sqrt({_format_raw(p, f.radicand)})"
    hi = a[1]
    if _is_zero(lv, hi):
        return _format_raw(p, a[0])
    hs = _format_raw(p, hi)
    if hs == "1":
        part = root
    elif hs == "-1":
        part = "-" + root
    elif lv == 0 or hs.startswith("(") or _SIMPLE.fullmatch(hs):
        part = f"{hs}*{root}"
    else:
        part = f"({hs})*{root}"
    if _is_zero(lv, a[0]):
        return part
    lo = _format_raw(p, a[0])
    if part.startswith("-"):
        return f"({lo} - {part[1:]})"
    return f"({lo} + {part})"


# --- coefficient helpers used by the series layer ---------------------------

Coefficient = Union[Fraction, Surd]


def coeff_sign(c) -> int:
    if isinstance(c, Surd):
        return c.sign()
    return (c > 0) - (c < 0)


def surd_sqrt(c) -> Coefficient:
    """Non-negative square root of a non-negative rational or surd."""
    if isinstance(c, int):
        c = Fraction(c)
    if isinstance(c, Fraction):
        if c < 0:
            raise NegativeRadicand(f"sqrt of negative coefficient {c}")
        q = mpq(c)
        r = _rational_sqrt(q)
        if r is not None:
            return Fraction(int(r.numerator), int(r.denominator))
        outer, radicand = _square_split(q.numerator * q.denominator)
        return Surd(QQ.adjoin(mpq(radicand)), (_ZERO, mpq(outer, q.denominator)))
    if c.sign() < 0:
        raise NegativeRadicand(f"sqrt of negative coefficient {c}")
    f = c.field
    r = _sqrt(f, c.raw)
    if r is not None:
        return _make(f, r)
    nf = f.adjoin(c.raw)
    return Surd(nf, (_zero(f.level), _one(f.level)))


def is_rational(c) -> bool:
    return not isinstance(c, Surd)
