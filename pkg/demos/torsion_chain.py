"""Walk the bounding torsion chain for a split and a good curve.

For eps = t each halving step halves the valuation of x; for eps = 1/2 the
valuations stay at 0 while the points run off towards O.

    python demos/torsion_chain.py
"""

from puiseux_ec import MinimalCurve, bounding_torsion_chain, double_point, parse_series
from puiseux_ec.puiseux import format_series


def show(eps: str, depth: int) -> None:
    # coefficients are nested radicals; short ones are printed exactly
    curve = MinimalCurve(parse_series(eps))
    print(f"y^2 = x(x+1)(x + {eps})")
    chain = bounding_torsion_chain(curve, depth)
    for k, p in enumerate(chain):
        exact = format_series(p.x.leading_term())
        approx = float(p.x.leading_coefficient)
        print(
            f"  T{2 ** (k + 2):<3} v(x) = {str(p.x.valuation()):<5}"
            f" x ~ {approx:.6f} t^({p.x.valuation()})"
            + (f"   exact leading term {exact}" if len(exact) < 50 else "")
        )
    # each element doubles onto its predecessor
    for small, big in zip(chain, chain[1:]):
        assert double_point(curve, big).x.agrees_with(small.x)
    print()


if __name__ == "__main__":
    show("t", 6)
    show("1/2", 5)
