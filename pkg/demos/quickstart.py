"""
Two centers for uncertain points on a tree
==========================================

Build a small instance by hand, solve it exactly, and check the witness.
"""
from fractions import Fraction

from treetwocenter import (DistanceIndex, TreePoint, build_instance,
                           objective_phi, solve)

# A path on five vertices with unit edges.  One uncertain point is spread
# over the left half, the other sits deterministically at the right end.
inst = build_instance(
    5,
    [(0, 1, Fraction(1)), (1, 2, Fraction(1)),
     (2, 3, Fraction(1)), (3, 4, Fraction(1))],
    [
        (Fraction(1), [(TreePoint(0, Fraction(0)), Fraction(1, 4)),
                       (TreePoint(0, Fraction(1)), Fraction(1, 4)),
                       (TreePoint(1, Fraction(1)), Fraction(1, 2))]),
        (Fraction(1), [(TreePoint(3, Fraction(1)), Fraction(1))]),
    ])

sol = solve(inst)
print(f"lambda* = {sol.lambda_star}")
print(f"center1 = edge {sol.center1.edge}, offset {sol.center1.offset}")
print(f"center2 = edge {sol.center2.edge}, offset {sol.center2.offset}")

# The objective at the returned pair equals lambda* exactly: every value in
# the library is a Fraction, so this is true equality, not a tolerance.
idx = DistanceIndex(inst)
assert objective_phi(inst, sol.center1, sol.center2, idx) == sol.lambda_star
print("phi(center1, center2) == lambda*  (exact)")
