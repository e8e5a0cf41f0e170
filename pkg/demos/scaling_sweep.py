"""
Empirical scaling of the decision procedure
===========================================

The bench path swaps exact rationals for floats and times decide() on
caterpillar and random trees of growing size.  A log-log fit of median
wall time against m*n estimates the effective exponent; near-linear
growth shows up as a slope close to 1.

This trimmed sweep finishes in a few seconds; pass bigger sizes for a
serious measurement (the CLI equivalent is `treetwocenter bench`).
"""
from treetwocenter.bench import decide_bench, fit_slope, rows_to_csv

rows = decide_bench(sizes=(1000, 2000, 4000, 8000), repeats=3)
print(rows_to_csv(rows))
print(f"fitted log-log slope: {fit_slope(rows):.3f}")
