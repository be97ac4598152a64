"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PuiseuxECError(Exception):
    """Base class for all errors raised by :mod:`puiseux_ec`."""


# --- field arithmetic -------------------------------------------------------


class IndeterminateAtHorizon(PuiseuxECError, ArithmeticError):
    """A decision needs a term that lies at or beyond a precision horizon."""


class DivisionByZero(PuiseuxECError, ZeroDivisionError):
    """Inversion of the exact zero element."""


class NegativeRadicand(PuiseuxECError, ValueError):
    """Square root requested for a negative element."""


class NotFinite(PuiseuxECError, ValueError):
    """Standard part requested for an element of negative valuation."""


class DenominatorOverflow(PuiseuxECError, ArithmeticError):
    """An exponent denominator exceeded the configured cap."""


# --- curves -----------------------------------------------------------------


class DegenerateRoots(PuiseuxECError, ValueError):
    """Two roots of the cubic coincide, so the curve is singular."""


class NotOnCurve(PuiseuxECError, ValueError):
    """Coordinates do not satisfy the curve equation below their horizon."""


class NotOnComponent(PuiseuxECError, ValueError):
    """The point is not on the connected component of the identity."""


class HalvingFailed(PuiseuxECError, ArithmeticError):
    """No rational half of a point was found while building a torsion chain."""


class SingularOperand(PuiseuxECError, ValueError):
    """The reduced group law was handed the singular point of the reduction."""


# --- quotients --------------------------------------------------------------


class WrongCase(PuiseuxECError, ValueError):
    """The operation does not apply to the classification case at hand."""


class InvalidTruncationPoint(PuiseuxECError, ValueError):
    """The truncating point S violates S in E(K)^0, S != T2, y_S > 0."""


class OutsideTruncation(PuiseuxECError, ValueError):
    """An operand of the truncated group law lies outside [-S, S)."""


# --- text interface ---------------------------------------------------------


class ParseError(PuiseuxECError, ValueError):
    """Malformed series text; carries the byte offset and expected tokens."""

    def __init__(self, text: str, offset: int, expected: set[str] | frozenset[str]):
        self.text = text
        self.offset = offset
        self.expected = frozenset(expected)
        want = ", ".join(sorted(self.expected)) or "end of input"
        super().__init__(f"parse error at offset {offset}: expected {want}")


class UnknownSuite(PuiseuxECError, KeyError):
    """``verify`` was asked for a suite that does not exist."""
