"""Text syntax for series, matching what :func:`format_series` prints.

::

    expr   := sign? term (('+' | '-') term)*
    term   := 'O' '(' tpow ')' | coeff ('*' tpow)? | tpow
    tpow   := 't' ('^' (integer | '(' '-'? rational ')'))?
    coeff  := atom ('*' atom)*
    atom   := rational | 'sqrt' '(' cexpr ')' | '(' cexpr ')'
    cexpr  := sign? coeff (('+' | '-') coeff)*
    rational := integer ('/' positive-integer)?

Coefficients may be nested square roots so that printed surds round-trip.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .puiseux import INF, PuiseuxNumber
from .surd import Coefficient, surd_sqrt


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # lexing helpers -----------------------------------------------------------

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _at_word(self, word: str) -> bool:
        self._skip()
        return self.text.startswith(word, self.pos)

    def _fail(self, *expected: str):
        self._skip()
        raise ParseError(self.text, self.pos, set(expected))

    def _eat(self, ch: str) -> None:
        if self._peek() != ch:
            self._fail(repr(ch))
        self.pos += 1

    def _integer(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self._fail("integer")
        return int(self.text[start : self.pos])

    def _rational(self) -> Fraction:
        num = self._integer()
        if self._peek() == "/":
            self.pos += 1
            at = self.pos
            den = self._integer()
            if den == 0:
                self.pos = at
                self._fail("positive integer")
            return Fraction(num, den)
        return Fraction(num)

    # grammar ------------------------------------------------------------------

    def parse(self) -> PuiseuxNumber:
        terms: list[tuple[Fraction, Coefficient]] = []
        horizon = INF
        negate = False
        ch = self._peek()
        if ch and ch in "+-":
            negate = ch == "-"
            self.pos += 1
        while True:
            if self._at_word("O"):
                self.pos += 1
                self._eat("(")
                h = self._tpow()
                self._eat(")")
                horizon = h if horizon == INF else min(horizon, h)
            else:
                e, c = self._term()
                terms.append((e, -c if negate else c))
            ch = self._peek()
            if ch == "":
                break
            if ch not in "+-":
                self._fail("'+'", "'-'", "end of input")
            negate = ch == "-"
            self.pos += 1
        return PuiseuxNumber.from_terms(terms, horizon)

    def _term(self) -> tuple[Fraction, Coefficient]:
        if self._peek() == "t":
            return self._tpow(), Fraction(1)
        c = self._coeff()
        if self._peek() == "*":
            self.pos += 1
            return self._tpow(), c
        return Fraction(0), c

    def _tpow(self) -> Fraction:
        if self._peek() != "t":
            self._fail("'t'")
        self.pos += 1
        if self._peek() != "^":
            return Fraction(1)
        self.pos += 1
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            neg = False
            if self._peek() == "-":
                neg = True
                self.pos += 1
            e = self._rational()
            self._eat(")")
            return -e if neg else e
        if ch.isdigit():
            return Fraction(self._integer())
        self._fail("'('", "integer")
        raise AssertionError  # unreachable

    def _coeff(self) -> Coefficient:
        value = self._atom()
        while self._peek() == "*":
            # a following 't' belongs to the enclosing term
            save = self.pos
            self.pos += 1
            if self._peek() == "t":
                self.pos = save
                break
            value = value * self._atom()
        return value

    def _atom(self) -> Coefficient:
        ch = self._peek()
        if ch.isdigit():
            return self._rational()
        if self._at_word("sqrt"):
            self.pos += 4
            self._eat("(")
            arg = self._cexpr()
            self._eat(")")
            return surd_sqrt(arg)
        if ch == "(":
            self.pos += 1
            value = self._cexpr()
            self._eat(")")
            return value
        self._fail("integer", "'sqrt'", "'('", "'t'")
        raise AssertionError  # unreachable

    def _cexpr(self) -> Coefficient:
        neg = False
        if self._peek() == "-":
            neg = True
            self.pos += 1
        value = self._coeff()
        if neg:
            value = -value
        while self._peek() in ("+", "-"):
            sub = self._peek() == "-"
            self.pos += 1
            rhs = self._coeff()
            value = value - rhs if sub else value + rhs
        return value


def parse_series(text: str) -> PuiseuxNumber:
    """Parse ``text`` into a series; the horizon is infinite unless ``O(...)``
    appears."""
    if not text.strip():
        raise ParseError(text, len(text), {"integer", "'t'", "'O'"})
    return _Parser(text).parse()


def parse_coefficient(text: str) -> Coefficient:
    p = _Parser(text)
    value = p._cexpr()
    if p._peek() != "":
        p._fail("end of input")
    return value


def _split_pair(text: str) -> tuple[str, str] | None:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        return None
    body = body[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1 :]
    return None


def parse_point(curve, text: str):
    """``O``, ``(x, y)``, or the lift form ``(x, +)`` / ``(x, -)``."""
    from .curve import INFINITY, lift_y

    if text.strip() == "O":
        return INFINITY
    pair = _split_pair(text)
    if pair is None:
        raise ParseError(text, 0, {"'O'", "'('"})
    xs, ys = pair
    x = parse_series(xs)
    if ys.strip() in ("+", "-"):
        return lift_y(curve, x, 1 if ys.strip() == "+" else -1)
    return curve.point(x, parse_series(ys))
