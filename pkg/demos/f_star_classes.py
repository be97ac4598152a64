"""The value-group witness on eps = t^2.

Points of E(K)^0 are sent by f* into the multiplicative truncation
[eps, 1/eps); the class coordinate v(f*(P))/v(1/eps) adds like an angle
modulo 2.  T2 sits at -1 and G00 at 0.

    python demos/f_star_classes.py
"""

import random
from fractions import Fraction

from puiseux_ec import MinimalCurve, add_points, parse_series
from puiseux_ec.quotient import TruncationContext, quotient_coordinate
from puiseux_ec.sampling import random_point

GRID = [Fraction(k, 4) for k in range(-2, 10)]


def mod2(a: Fraction) -> Fraction:
    a %= 2
    return a - 2 if a >= 1 else a


if __name__ == "__main__":
    curve = MinimalCurve(parse_series("t^2"))
    ctx = TruncationContext(curve)
    print("T2 ->", quotient_coordinate(ctx, curve.t2))
    rng = random.Random(1)
    for _ in range(8):
        p = random_point(curve, rng, valuations=GRID)
        q = random_point(curve, rng, valuations=GRID)
        a, b = quotient_coordinate(ctx, p), quotient_coordinate(ctx, q)
        s = quotient_coordinate(ctx, add_points(curve, p, q))
        print(f"{str(a):>6} + {str(b):>6} = {str(s):>6}   (mod 2: {mod2(a + b) == s})")
