"""
Cross-checking the solver against brute force
=============================================

The oracle enumerates a candidate set that provably contains an optimal
pair (vertices, medians, and every pairwise crossing of the per-edge
linear forms) and scans all pairs.  It is slow and simple, which is the
point: any disagreement with solve() is a solver bug by definition.
"""
import random
import time

from treetwocenter import generate_random, oracle_lambda_star, solve

rng = random.Random(7)
t0 = time.time()
agreements = 0
for trial in range(40):
    inst = generate_random(seed=rng.randrange(10 ** 6),
                           n=rng.randint(1, 6), m=rng.randint(1, 3),
                           vertex_budget=rng.randint(2, 24),
                           denominator_bound=16)
    fast = solve(inst).lambda_star
    slow, _, _ = oracle_lambda_star(inst)
    assert fast == slow, f"disagreement on trial {trial}: {fast} vs {slow}"
    agreements += 1

print(f"{agreements}/40 random instances agree exactly "
      f"({time.time() - t0:.1f}s)")
