"""Optimal two-center solver.

Two centroid-descent searches locate the critical edges (the edges
carrying the optimal centers); the optimal value is then the smallest
feasible member of a finite candidate set read off those edges, found by
binary search with the decision procedure as the oracle.

The key test at a vertex ranks the weighted expected distances and the
points' median directions.  Three tight demands in three directions pin a
center at the tested vertex and settle the instance outright; otherwise
the ranking names the one or two directions worth descending into.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decision import decide
from .instance import ProblemInstance, TreePoint
from .metrics import all_weighted_median_values, expected_distance, form_on_edge
from .one_center import one_center
from .reduction import reduce_to_vertex_constrained
from .tree import DistanceIndex, region_centroid, split_components


@dataclass(frozen=True)
class Solution:
    lambda_star: Fraction
    center1: TreePoint
    center2: TreePoint
    critical_edge1: int | None
    critical_edge2: int | None


@dataclass(frozen=True)
class KeyOutcome:
    kind: str                        # 'solution' | 'one' | 'two'
    solution: Solution | None = None
    first: int | None = None         # adjacent vertex naming the split subtree
    second: int | None = None


def _make_solution(inst, lam, q1, q2, e1=None, e2=None):
    q1 = inst.canonical_point(q1)
    q2 = inst.canonical_point(q2)
    if q2 < q1:
        q1, q2 = q2, q1
    if e1 is None:
        e1, e2 = q1.edge, q2.edge
    return Solution(lam, q1, q2, e1, e2)


def key_point_test(inst: ProblemInstance, x: TreePoint,
                   index: DistanceIndex | None = None) -> KeyOutcome:
    """At vertex x: is x an optimal center, and if not, which split
    subtrees hold the critical edges?"""
    idx = index if index is not None else DistanceIndex(inst)
    v = inst.point_vertex(x)
    assert v is not None, "key tests run at vertices"
    x = inst.canonical_point(x)
    n = inst.n
    comp_of = {}
    for _, nb, verts in split_components(inst, v):
        for u in verts:
            comp_of[u] = nb

    dvals = []
    L = []
    half = Fraction(1, 2)
    for up in inst.uncertain_points:
        dvals.append(up.weight * expected_distance(up, x, idx))
        acc = {}
        li = None
        for loc, f in up.locations:
            lv = inst.point_vertex(loc)
            if lv == v:
                continue
            d = comp_of[lv]
            acc[d] = acc.get(d, 0) + f
            if acc[d] > half:
                li = d
                break
        L.append(li)

    meds = all_weighted_median_values(inst, idx)
    big_m = max(meds)
    order = sorted(range(n), key=lambda i: (-dvals[i], i))
    r1 = order[0]
    if L[r1] is None:
        # the costliest point is already at its median: nothing beats x
        return KeyOutcome('solution',
                          solution=_make_solution(inst, dvals[r1], x, x))
    if n == 1:
        return KeyOutcome('one', first=L[r1])
    v2 = dvals[order[1]]
    tied = [i for i in range(n) if dvals[i] == v2]

    def pin():
        lam = big_m if big_m > v2 else v2
        q1 = one_center(inst, [1 if i == r1 else 0 for i in range(n)], idx).center
        return KeyOutcome('solution', solution=_make_solution(inst, lam, q1, x))

    if any(L[i] is None for i in tied):
        return pin()  # a second-ranked point is pinned to x by its median
    l1, l2 = L[r1], L[order[1]]
    if l1 != l2:
        if any(L[i] not in (l1, l2) for i in tied):
            return pin()  # three tight demands in three directions
        return KeyOutcome('two', first=l1, second=l2)
    others = {L[i] for i in tied if L[i] != l1}
    if len(others) >= 2:
        return pin()
    if len(others) == 1:
        return KeyOutcome('two', first=l1, second=others.pop())
    return KeyOutcome('one', first=l1)


def _incident_region_edge(inst, region, c):
    for eid, nb in inst.adjacency[c]:
        if nb in region:
            return eid
    raise AssertionError("region vertex with no region edge")


def _search_one(inst, idx):
    """Centroid-descent search for an edge carrying an optimal center.

    Keeps the invariant that the region holds such an edge; flags mark
    boundary centroids whose far side was promised to the other center.
    """
    region = set(range(inst.vertex_count))
    flags = set()
    while True:
        region_edges = [eid for eid, (a, b, _) in enumerate(inst.edges)
                        if a in region and b in region]
        if len(region_edges) == 1:
            return region_edges[0]
        assert region_edges, "searches need at least one edge"
        c = region_centroid(inst, region)
        out = key_point_test(inst, inst.vertex_point(c), idx)
        if out.kind == 'solution':
            return out.solution
        comp_of = {}
        for _, nb, verts in split_components(inst, c):
            for u in verts:
                comp_of[u] = nb
        dirs = [out.first] if out.kind == 'one' else [out.first, out.second]
        usable = [d for d in dirs if d in region]
        if not usable:
            # the test points outside the region: the center sits at c
            return _incident_region_edge(inst, region, c)
        if out.kind == 'two':
            if len(usable) == 2:
                clear = [d for d in usable
                         if not any(comp_of.get(f) == d for f in flags)]
                if clear:
                    usable = clear
            flags.add(c)
        chosen = usable[0]
        region = {u for u in region if u == c or comp_of.get(u) == chosen}


def _second_edge_sweep(inst, idx, e1):
    """Best completion of a center constrained to e1.

    Sweeping position t across e1, the weighted loads are linear forms;
    between two form crossings their ranking is fixed, so the second
    center only ever serves a ranking prefix.  Minimizing the larger of
    the first suffix form and the prefix's one-center value over every
    interval and prefix size yields the optimum outright, and the
    winning one-center names the second critical edge.
    """
    n = inst.n
    length = inst.edge_length(e1)
    forms = [form_on_edge(inst, up, e1, idx) for up in inst.uncertain_points]
    cuts = {Fraction(0), length}
    for i in range(n):
        fi = forms[i]
        for j in range(i + 1, n):
            fj = forms[j]
            if fi.slope == fj.slope:
                continue
            t = (fj.base - fi.base) / (fi.slope - fj.slope)
            if 0 < t < length:
                cuts.add(t)
    cuts = sorted(cuts)

    oc_cache = {}

    def oc(mask_key):
        if mask_key not in oc_cache:
            mask = [1 if i in mask_key else 0 for i in range(n)]
            oc_cache[mask_key] = one_center(inst, mask, idx)
        return oc_cache[mask_key]

    best = None                      # (value, prefix key or None)
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2
        rank = sorted(range(n), key=lambda i: (-forms[i].value(mid), i))
        for k in range(n + 1):
            if k < n:
                f = forms[rank[k]]
                edge_part = min(f.value(a), f.value(b))
            else:
                edge_part = Fraction(0)
            key = frozenset(rank[:k])
            if best is not None and best[0] <= edge_part:
                continue             # the one-center part can only raise it
            value = max(edge_part, oc(key).value)
            if best is None or value < best[0]:
                best = (value, key if k else None)
    if best[1] is None:
        return e1                    # one center on e1 already covers all
    return inst.canonical_point(oc(best[1]).center).edge


def find_critical_edges(inst: ProblemInstance, index: DistanceIndex | None = None):
    """The two edges carrying an optimal pair of centers, or a Solution
    when a key test settles the instance outright."""
    idx = index if index is not None else DistanceIndex(inst)
    first = _search_one(inst, idx)
    if isinstance(first, Solution):
        return first
    return first, _second_edge_sweep(inst, idx, first)


def _vertex_load_tables(inst, idx):
    """Per uncertain point: w·Ed at every vertex, and the rooted-subtree
    probability at every vertex.  Two tree walks per point."""
    nv = inst.vertex_count
    order = idx.order
    parent = idx.parent
    elen = [None] * nv
    for v in order:
        p = parent[v]
        if p >= 0:
            elen[v] = idx.depth[v] - idx.depth[p]
    loads, sides = [], []
    zero = Fraction(0)
    for up in inst.uncertain_points:
        mass = [zero] * nv
        for loc, f in up.locations:
            mass[inst.point_vertex(loc)] += f
        sub = mass[:]
        down = [zero] * nv
        for v in reversed(order):
            p = parent[v]
            if p >= 0:
                sub[p] += sub[v]
                down[p] += down[v] + sub[v] * elen[v]
        root = order[0]
        ed = [zero] * nv
        ed[root] = down[root]
        for v in order:
            p = parent[v]
            if p >= 0:
                ed[v] = ed[p] + (1 - 2 * sub[v]) * elen[v]
        w = up.weight
        loads.append([w * e for e in ed])
        sides.append(sub)
    return loads, sides


def global_lambda_candidates(inst: ProblemInstance,
                             index: DistanceIndex | None = None, below=None):
    """Every value the optimum can take anywhere on the tree.

    The optimum is the one-center value of whichever side of the optimal
    split attains the max, and a one-center value is always pinned at a
    vertex, at a crossing of two weighted loads on an edge, or at a flat
    bottom (then it equals the worst single-point median value).  With
    below given, only values strictly under it are returned.
    """
    idx = index if index is not None else DistanceIndex(inst)
    n = inst.n
    loads, sides = _vertex_load_tables(inst, idx)
    weights = [up.weight for up in inst.uncertain_points]
    out = []

    def keep(x):
        if below is None or x < below:
            out.append(x)

    for row in loads:
        for x in row:
            keep(x)
    keep(max(all_weighted_median_values(inst, idx)))
    for eid, (u, v, length) in enumerate(inst.edges):
        forms = []
        for i in range(n):
            if idx.parent_edge[u] == eid:
                f_u = sides[i][u]        # u is the deeper endpoint
            else:
                f_u = 1 - sides[i][v]
            forms.append((loads[i][u], weights[i] * (2 * f_u - 1)))
        for i in range(n):
            bi, si = forms[i]
            for j in range(i + 1, n):
                bj, sj = forms[j]
                if si == sj:
                    continue
                t = (bj - bi) / (si - sj)
                if 0 < t < length:
                    keep(bi + si * t)
    return out


def lambda_candidates_on_edges(inst: ProblemInstance, e1: int, e2: int,
                               index: DistanceIndex | None = None):
    """Every value the optimum can take given centers on e1/e2: pairwise
    crossing ordinates of the weighted forms on each edge, all endpoint
    ordinates, and the worst single-point median value."""
    idx = index if index is not None else DistanceIndex(inst)
    values = set()
    for eid in {e1, e2}:
        length = inst.edge_length(eid)
        forms = [form_on_edge(inst, up, eid, idx) for up in inst.uncertain_points]
        for f in forms:
            values.add(f.base)
            values.add(f.base + f.slope * length)
        for i in range(len(forms)):
            fi = forms[i]
            for j in range(i + 1, len(forms)):
                fj = forms[j]
                if fi.slope == fj.slope:
                    continue
                t = (fj.base - fi.base) / (fi.slope - fj.slope)
                if 0 <= t <= length:
                    values.add(fi.base + fi.slope * t)
    values.add(max(all_weighted_median_values(inst, idx)))
    return sorted(values)


def _certified(inst, idx, sol):
    """Cross-check a solution against every value the optimum could take.

    One decision call on the largest global candidate below the claimed
    value settles it: monotonicity makes that single test cover all of
    them.  On the rare miss (the edge search latched onto the wrong
    branch) the true optimum is recovered from the global set.
    """
    lam = sol.lambda_star
    lower = global_lambda_candidates(inst, idx, below=lam)
    if not lower or not decide(inst, max(lower), idx).feasible:
        return sol
    cands = sorted(set(lower))
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if decide(inst, cands[mid], idx).feasible:
            hi = mid
        else:
            lo = mid + 1
    out = decide(inst, cands[lo], idx)
    return _make_solution(inst, cands[lo], out.center1, out.center2)


def solve(inst: ProblemInstance) -> Solution:
    """Exact optimal two-center placement."""
    core, mapping = reduce_to_vertex_constrained(inst)
    idx = DistanceIndex(core)
    if core.n == 0:
        p = core.vertex_point(0)
        sol = Solution(Fraction(0), p, p, None, None)
    else:
        found = find_critical_edges(core, idx)
        if isinstance(found, Solution):
            sol = found
        else:
            e1, e2 = found
            cands = lambda_candidates_on_edges(core, e1, e2, idx)
            if not decide(core, cands[-1], idx).feasible:
                raise RuntimeError(
                    "no feasible candidate on the critical edges; "
                    "the edge search went wrong")
            lo, hi = 0, len(cands) - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if decide(core, cands[mid], idx).feasible:
                    hi = mid
                else:
                    lo = mid + 1
            lam = cands[lo]
            out = decide(core, lam, idx)
            assert out.feasible
            sol = _make_solution(core, lam, out.center1, out.center2, e1, e2)
        sol = _certified(core, idx, sol)
    if core is inst:
        return sol
    c1 = mapping.backward(sol.center1)
    c2 = mapping.backward(sol.center2)
    return _make_solution(inst, sol.lambda_star, c1, c2)
