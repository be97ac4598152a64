"""Exact arithmetic for elliptic curves over real Puiseux series and the
valuation-theoretic classification of their quotients ``G/G00``."""

from .curve import (
    INFINITY,
    CurvePoint,
    MinimalCurve,
    add_points,
    bounding_torsion_chain,
    double_point,
    halve_point,
    legendre_to_minimal,
    lift_y,
    multiply_point,
    orientation_key,
    sub_points,
)
from .errors import PuiseuxECError
from .parser import parse_series
from .puiseux import DEFAULT_CONTEXT, ONE, T, ZERO, PrecisionContext, PuiseuxNumber
from .quotient import TruncationContext, classify
from .reduction import ReductionType, reduce_point, reduction_type

__version__ = "0.1.0"
