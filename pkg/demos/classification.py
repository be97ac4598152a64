"""Classify G/G00 for the full component and for several truncations.

    python demos/classification.py
"""

from puiseux_ec import MinimalCurve, classify, parse_series
from puiseux_ec.quotient import g00_criterion
from puiseux_ec.suites import context_for

SCENARIOS = [
    ("t", None),
    ("1/2", None),
    ("1 - t", None),
    ("t", "t^(-1)"),
    ("t", "t^(1/4)"),
    ("t", "1"),
    ("1/2", "1"),
]

if __name__ == "__main__":
    print(f"{'eps':<7}{'S_x':<9}{'reduction':<10}{'case':<22}{'1-based':<9}target")
    for eps, trunc in SCENARIOS:
        ctx = context_for(MinimalCurve(parse_series(eps)), trunc)
        c = classify(ctx)
        print(
            f"{eps:<7}{trunc or '-':<9}{c.reduction_type.value:<10}"
            f"{c.case_label.value:<22}{str(c.one_based):<9}{c.internality.value}"
        )
        print(f"{'':<16}G00: {g00_criterion(ctx)}")
