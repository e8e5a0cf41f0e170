"""
Watching feasibility flip at the optimum
========================================

decide(lam) answers "can two centers serve every point within lam?".
Feasibility is monotone in lam and flips exactly at lambda*, even one part
in 2^40 below it.
"""
from fractions import Fraction

from treetwocenter import decide, generate_random, solve

inst = generate_random(seed=42, n=5, m=3, vertex_budget=20,
                       denominator_bound=16)
sol = solve(inst)
lam = sol.lambda_star
print(f"lambda* = {lam}\n")

knife = Fraction(1) - Fraction(1, 2 ** 40)
for label, probe in [
    ("0", Fraction(0)),
    ("lambda*/2", lam / 2),
    ("lambda* - epsilon", lam * knife),
    ("lambda*", lam),
    ("3 lambda*/2", lam * Fraction(3, 2)),
]:
    out = decide(inst, probe)
    print(f"decide({label:>18}) -> {'feasible' if out.feasible else 'infeasible'}")

# The epsilon probe is not a float trick: lam * knife is a Fraction with a
# ~40-bit denominator, and the comparison inside decide stays exact.
