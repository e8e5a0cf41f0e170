"""Brute-force ground truth for the two-center objective.

Enumerate a candidate point set that provably contains an optimal center
pair, then scan all pairs.  On every edge the weighted expected distances
are lines, so an optimal center slides freely to an edge endpoint or to a
parameter where two lines meet without increasing the objective; those
points, plus all vertices and median points, form the candidate set.

Desk scale only: the pair scan is quadratic in the candidate count.
"""
from __future__ import annotations

from .instance import ProblemInstance, TreePoint
from .metrics import expected_distance, form_on_edge, median
from .tree import DistanceIndex


def oracle_candidate_points(inst: ProblemInstance, index: DistanceIndex | None = None):
    idx = index if index is not None else DistanceIndex(inst)
    cands = set()
    for v in range(inst.vertex_count):
        cands.add(inst.vertex_point(v))
    for up in inst.uncertain_points:
        cands.add(median(up, inst, idx).point)
    for eid, (u, v, length) in enumerate(inst.edges):
        forms = [form_on_edge(inst, up, eid, idx) for up in inst.uncertain_points]
        for a in range(len(forms)):
            for b in range(a + 1, len(forms)):
                fa, fb = forms[a], forms[b]
                if fa.slope == fb.slope:
                    continue
                t = (fb.base - fa.base) / (fa.slope - fb.slope)
                if 0 <= t <= length:
                    cands.add(inst.canonical_point(TreePoint(eid, t)))
    return sorted(cands)


def oracle_lambda_star(inst: ProblemInstance, index: DistanceIndex | None = None):
    """(λ*, x1, x2): exact optimum with the lexicographically least pair."""
    idx = index if index is not None else DistanceIndex(inst)
    cands = oracle_candidate_points(inst, idx)
    ups = inst.uncertain_points
    if not ups:
        p = inst.vertex_point(0)
        return 0, p, p

    vecs = []
    for p in cands:
        vecs.append([up.weight * expected_distance(up, p, idx) for up in ups])

    n = len(ups)
    best = None
    best_pair = None
    for a in range(len(cands)):
        va = vecs[a]
        for b in range(a, len(cands)):
            vb = vecs[b]
            worst = 0
            ok = True
            for i in range(n):
                s = va[i] if va[i] <= vb[i] else vb[i]
                if s > worst:
                    worst = s
                    if best is not None and worst > best:
                        ok = False
                        break
            if not ok:
                continue
            pair = (cands[a], cands[b])
            if best is None or worst < best or (worst == best and pair < best_pair):
                best = worst
                best_pair = pair
    return best, best_pair[0], best_pair[1]


def oracle_decide(inst: ProblemInstance, lam, index: DistanceIndex | None = None) -> bool:
    value, _, _ = oracle_lambda_star(inst, index)
    return value <= lam
