"""Decision procedure: can two centers cover every uncertain point under lam?

The search maintains a shrinking working tree whose region always holds an
edge carrying a center of some optimal placement.  Each round halves the
region by centroid tests, classifies the surviving connectors, prunes at
least a quarter of the active points, and rebuilds a smaller tree with
relocated dummy leaves.  Small trees fall through to a direct edge search,
and the final edge is resolved exactly against the original instance.

Vertex flags record promises of the form "some feasible placement keeps a
center behind this vertex"; at most one such promise can be open at a time,
and two open promises plus a regional demand are immediately infeasible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .instance import ProblemInstance, TreePoint
from .metrics import all_weighted_median_values, expected_distance, form_on_edge
from .one_center import one_center
from .reduction import reduce_to_vertex_constrained
from .tree import DistanceIndex
from .working import Component, WorkingTree

HALF = Fraction(1, 2)
BASE_POINTS = 8    # route to the base case at or below this many active points
BASE_VERTICES = 8  # ... or this many non-dummy vertices


@dataclass(frozen=True)
class DecisionOutcome:
    feasible: bool
    center1: TreePoint | None = None
    center2: TreePoint | None = None

    def __bool__(self):
        return self.feasible


@dataclass
class EarlyResult:
    """A round settled feasibility before the edge search finished."""

    outcome: DecisionOutcome


class BaseCase:
    """Signal: the tree is small enough for the direct edge search."""


@dataclass
class PointTestReport:
    """Outcome of the center-demand ladder at one test place.

    outcome 'center' pins a center at x; 'subtree' names the split subtree
    that must hold one; 'fallback' marks a state where every demand points
    into non-navigable pseudo-subtrees and the caller should resolve by
    exhaustive edge search.
    """

    outcome: str                 # 'center' | 'subtree' | 'infeasible' | 'fallback'
    x: TreePoint | None = None
    subtree: int | None = None
    comp: object = None
    joined: int | None = None    # vertex materialized while flagging an interior place
    taus: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)


@dataclass
class CenterDetectReport:
    outcome: str                 # 'subtree' | 'complement' | 'infeasible' | 'delegated' | 'fallback'
    vertex: int | None = None
    comp: object = None
    delegate: PointTestReport | None = None


@dataclass(frozen=True)
class CoverInterval:
    """Feasible stretch of one point along a directed path; None/None = empty."""

    lower: Fraction | None
    upper: Fraction | None

    @property
    def empty(self):
        return self.lower is None


# -- terminal decisions -------------------------------------------------


def center_at_decide(inst: ProblemInstance, point: TreePoint, lam,
                     index: DistanceIndex | None = None) -> DecisionOutcome:
    """Feasibility with one center pinned at the given point."""
    idx = index if index is not None else DistanceIndex(inst)
    mask = [0] * inst.n
    for i, up in enumerate(inst.uncertain_points):
        if up.weight * expected_distance(up, point, idx) > lam:
            mask[i] = 1
    point = inst.canonical_point(point)
    if not any(mask):
        return DecisionOutcome(True, point, point)
    oc = one_center(inst, mask, idx)
    if oc.value <= lam:
        return DecisionOutcome(True, point, oc.center)
    return DecisionOutcome(False)


def peripheral_edge_decide(inst: ProblemInstance, eid: int, lam,
                           index: DistanceIndex | None = None) -> DecisionOutcome:
    """Decide lam given an edge that should hold one of the centers.

    Sound for any edge; complete whenever some feasible placement has a
    center on the edge.  The two critical parameters are the last position
    covering every point with median mass on the low side and the first
    position covering the rest; when both fall inside the edge they cover
    everything between them and settle the instance outright.
    """
    idx = index if index is not None else DistanceIndex(inst)
    length = inst.edge_length(eid)
    t_small = math.inf   # min over points wanting t below their threshold
    t_large = -math.inf  # max over points wanting t above theirs
    for up in inst.uncertain_points:
        f = form_on_edge(inst, up, eid, idx)
        if f.slope > 0:
            ti = (lam - f.base) / f.slope
            if ti < t_small:
                t_small = ti
        elif f.slope < 0:
            ti = (lam - f.base) / f.slope
            if ti > t_large:
                t_large = ti
        elif f.base > lam:
            t_small = -math.inf  # flat and uncovered: no position on e helps
    if (-math.inf < t_small < math.inf and -math.inf < t_large < math.inf
            and 0 <= t_small <= length and 0 <= t_large <= length):
        return DecisionOutcome(
            True,
            inst.canonical_point(TreePoint(eid, t_small)),
            inst.canonical_point(TreePoint(eid, t_large)),
        )

    def clamp(t):
        if t == math.inf:
            return length
        if t == -math.inf:
            return Fraction(0)
        return min(max(t, Fraction(0)), length)

    tried = set()
    for t in (clamp(t_small), clamp(t_large)):
        if t in tried:
            continue
        tried.add(t)
        out = center_at_decide(inst, TreePoint(eid, t), lam, idx)
        if out.feasible:
            return out
    return DecisionOutcome(False)


def _fallback_decide(inst, origin_point, lam, idx) -> EarlyResult:
    # exact but slow: a pinned center first, then every edge in turn
    if origin_point is not None:
        out = center_at_decide(inst, origin_point, lam, idx)
        if out.feasible:
            return EarlyResult(out)
    for eid in range(len(inst.edges)):
        out = peripheral_edge_decide(inst, eid, lam, idx)
        if out.feasible:
            return EarlyResult(out)
    return EarlyResult(DecisionOutcome(False))


# -- the center-demand ladder -------------------------------------------


def point_test(wt: WorkingTree, place, lam, index=None) -> PointTestReport:
    """Must a center sit at this place, and if not, which split subtree
    holds one?

    Works on the working tree's census: real split subtrees, the bundle of
    incident dummy leaves, and a connector's folded arrays all participate
    as subtrees.  Demands are subtrees whose exclusive load exceeds lam
    plus open promises (flags); two demands flag the place and descend the
    flag-free one, three or more are infeasible.
    """
    place = wt.normalize_place(place)
    if place[0] == 'v' and wt.dummy[place[1]]:
        # a dummy leaf holds relocated mass only; the rest of the region
        # is the one direction worth descending
        c = place[1]
        nb = next(w for _, w in wt.adj[c] if w in wt.region)
        comp = Component(0, nb, [v for v in wt.region if v != c],
                         False, True, {}, {})
        return PointTestReport('subtree', None, subtree=comp.key, comp=comp)
    if place[0] == 'e':
        if wt.edges[place[1]][3] is None:
            a, b = wt.edges[place[1]][:2]
            leaf = b if wt.dummy[b] else a
            other = a if leaf == b else b
            comp = Component(0, other, [v for v in wt.region if v != leaf],
                             False, True, {}, {})
            return PointTestReport('subtree', None, subtree=comp.key, comp=comp)
        comps = wt.components_at_edge_point(place[1], place[2])
        phantom = False
        x_origin = wt.origin_of_place(place)
    else:
        comps, phantom = wt.components_at_vertex(place[1])
        x_origin = wt.vert_origin[place[1]]

    load_total = {i: 0 for i in wt.active}
    for comp in comps:
        for i, d in comp.load.items():
            load_total[i] += d
    classes = {}
    excl_max = {}
    pairs = []
    med_max = None
    for i in wt.active:
        dirs = [c for c in comps if c.mass.get(i, 0) >= HALF]
        bi = load_total[i]
        if not dirs:
            classes[i] = 'median'
            if med_max is None or bi > med_max:
                med_max = bi
        elif len(dirs) == 1:
            k = dirs[0].key
            classes[i] = k
            if k not in excl_max or bi > excl_max[k]:
                excl_max[k] = bi
        else:
            classes[i] = (dirs[0].key, dirs[1].key)
            pairs.append((i, dirs[0], dirs[1]))

    def rep(outcome, **kw):
        return PointTestReport(outcome, x_origin, taus=dict(excl_max),
                               classes=classes, **kw)

    if med_max is not None:
        if med_max == lam:
            return rep('center')
        if med_max > lam:
            return rep('infeasible')
    for i, ca, cb in pairs:
        if load_total[i] > lam:
            if ca.has_flag or cb.has_flag:
                continue  # the promised center may reach it
            if ca.navigable and cb.navigable:
                return rep('infeasible')
            # its reachable ball hides inside folded structure
            return rep('fallback')

    gamma = [c for c in comps if c.has_flag]
    for comp in comps:
        if comp.has_flag:
            continue
        t = excl_max.get(comp.key)
        if t is None:
            continue
        if t > lam:
            gamma.append(comp)
        elif t == lam:
            return rep('center')
    # Comparator reading at equality: only strictly-larger loads force a
    # direction; a point whose reach exactly equals lam, split across two
    # otherwise-safe subtrees, pins a center at x instead (the loop above
    # handles the single-subtree equality the same way).
    for i, ca, cb in pairs:
        if load_total[i] == lam and not ca.has_flag and not cb.has_flag:
            ta = excl_max.get(ca.key)
            tb = excl_max.get(cb.key)
            if (ta is None or ta < lam) and (tb is None or tb < lam):
                return rep('center')

    demand = len(gamma) + (1 if phantom else 0)
    if demand > 2:
        return rep('infeasible')
    if demand == 0:
        return rep('center')
    if demand == 1:
        if phantom:
            return rep('fallback')
        comp = gamma[0]
        if not comp.navigable:
            return rep('fallback')
        return rep('subtree', subtree=comp.key, comp=comp)
    choices = [c for c in gamma if not c.has_flag and c.navigable]
    if not choices:
        return rep('fallback')
    chosen = min(choices, key=lambda c: c.key)
    joined = None
    if place[0] == 'e':
        joined = wt.split_edge(place[1], place[2])
        wt.flag[joined] = True
    else:
        wt.flag[place[1]] = True
    return rep('subtree', subtree=chosen.key, comp=chosen, joined=joined)


def center_detect(wt: WorkingTree, path_verts, lam, index=None) -> CenterDetectReport:
    """Which subtree hanging off the interior of the given path demands a
    center?  Hangings are ranked by their load at their own attachment;
    one demand delegates to point_test there, two flag the chosen
    attachment, more are infeasible.
    """
    path_set = set(path_verts)
    interior = path_verts[1:-1]
    subtrees = []       # (vertex, comp, loads-at-vertex)
    phantom_flags = []
    for v in interior:
        comps, phantom = wt.components_at_vertex(v)
        loads = {i: 0 for i in wt.active}
        for comp in comps:
            for i, d in comp.load.items():
                loads[i] += d
        for comp in comps:
            if comp.key >= 0 and comp.entry in path_set:
                continue  # a path direction, not a hanging
            subtrees.append((v, comp, loads))
        if phantom:
            phantom_flags.append(v)
    L = {}
    for k, (v, comp, _) in enumerate(subtrees):
        for i in wt.active:
            if i not in L and comp.mass.get(i, 0) >= HALF:
                L[i] = k
    taus = {}
    for i, k in L.items():
        bi = subtrees[k][2][i]
        if k not in taus or bi > taus[k]:
            taus[k] = bi
    flagged = [k for k, (_, comp, _) in enumerate(subtrees) if comp.has_flag]
    endpoint_flag = wt.flag[path_verts[0]] or wt.flag[path_verts[-1]]
    q = [k for k, t in sorted(taus.items())
         if t > lam and k not in flagged]  # strict: load == lam is served
                                          # from the path point itself
    if len(q) > 2:
        return CenterDetectReport('infeasible')
    if len(q) == 2:
        if flagged or phantom_flags or endpoint_flag:
            return CenterDetectReport('infeasible')  # three separated demands
        navigable = [k for k in q if subtrees[k][1].navigable]
        if not navigable:
            return CenterDetectReport('fallback')
        k = navigable[0]
        v, comp, _ = subtrees[k]
        wt.flag[v] = True  # the other demand stays promised behind v
        return CenterDetectReport('subtree', vertex=v, comp=comp)
    if len(q) == 1:
        v = subtrees[q[0]][0]
        return CenterDetectReport(
            'delegated', vertex=v, delegate=point_test(wt, ('v', v), lam, index))
    return CenterDetectReport('complement')


# -- path-constrained decision ------------------------------------------


def _vertex_path(inst, a, b):
    adj = inst.adjacency
    prev = {a: (None, None)}
    stack = [a]
    while stack and b not in prev:
        v = stack.pop()
        for eid, w in adj[v]:
            if w not in prev:
                prev[w] = (v, eid)
                stack.append(w)
    verts = [b]
    v = b
    while v != a:
        v = prev[v][0]
        verts.append(v)
    return verts[::-1]


def _path_breakpoints(inst, idx, p, q):
    """((TreePoint, offset-from-p) ...) along the p-to-q path, including
    every intermediate vertex."""
    p = inst.canonical_point(p)
    q = inst.canonical_point(q)
    total = idx.distance(p, q)
    if total == 0:
        return [(p, Fraction(0))]
    pv = inst.point_vertex(p)
    qv = inst.point_vertex(q)
    if pv is None and qv is None and p.edge == q.edge \
            and abs(p.offset - q.offset) == total:
        return [(p, Fraction(0)), (q, total)]
    bps = []
    if pv is None:
        u, v, _ = inst.edges[p.edge]
        start = u if p.offset + idx.point_vertex_distance(q, u) == total else v
        bps.append((p, Fraction(0)))
        s0 = idx.point_vertex_distance(p, start)
    else:
        start = pv
        s0 = Fraction(0)
    if qv is None:
        u, v, _ = inst.edges[q.edge]
        end = u if idx.point_vertex_distance(p, u) + q.offset == total else v
    else:
        end = qv
    s = s0
    path = _vertex_path(inst, start, end)
    for k, v in enumerate(path):
        if k > 0:
            s += idx.vertex_distance(path[k - 1], v)
        bps.append((inst.vertex_point(v), s))
    if qv is None:
        bps.append((q, total))
    return bps


def _sublevel_on_breakpoints(samples, lam):
    """(lo, hi) where the piecewise-linear chain sits at or below lam."""
    lo = hi = None
    for k, (s, y) in enumerate(samples):
        if y <= lam:
            lo = s
            break
        if k + 1 < len(samples):
            s2, y2 = samples[k + 1]
            if y2 < y and y2 <= lam:
                lo = s + (y - lam) * (s2 - s) / (y - y2)
                break
    if lo is None:
        return None, None
    for k in range(len(samples) - 1, -1, -1):
        s, y = samples[k]
        if y <= lam:
            hi = s
            break
        s2, y2 = samples[k - 1]
        if y2 < y and y2 <= lam:
            hi = s2 + (lam - y2) * (s - s2) / (y - y2)
            break
    return lo, hi


def cover_intervals(inst: ProblemInstance, endpoints, lam,
                    index: DistanceIndex | None = None):
    """Per-point intervals of positions on the endpoint path covered
    under lam.  Endpoints may be vertex ids or TreePoints."""
    idx = index if index is not None else DistanceIndex(inst)
    p, q = (inst.vertex_point(e) if isinstance(e, int) else e for e in endpoints)
    bps = _path_breakpoints(inst, idx, p, q)
    out = []
    for up in inst.uncertain_points:
        samples = [(s, up.weight * expected_distance(up, pt, idx)) for pt, s in bps]
        lo, hi = _sublevel_on_breakpoints(samples, lam)
        out.append(CoverInterval(lo, hi))
    return out


def _point_on_breakpoints(inst, bps, s):
    for k, (pt, sk) in enumerate(bps):
        if s == sk:
            return pt
        if k + 1 < len(bps) and sk < s < bps[k + 1][1]:
            nxt, sn = bps[k + 1]
            # both breakpoints sit on one original edge
            if inst.point_vertex(pt) is None:
                eid = pt.edge
            elif inst.point_vertex(nxt) is None:
                eid = nxt.edge
            else:
                a, b = inst.point_vertex(pt), inst.point_vertex(nxt)
                eid = next(e for e, w in inst.adjacency[a] if w == b)

            def offset_on(pnt):
                v = inst.point_vertex(pnt)
                if v is None:
                    return pnt.offset
                u, w, length = inst.edges[eid]
                return Fraction(0) if v == u else length

            oa, ob = offset_on(pt), offset_on(nxt)
            frac = (s - sk) / (sn - sk)
            return TreePoint(eid, oa + (ob - oa) * frac)
    raise AssertionError("offset outside the path")


def path_constrained_decide(inst: ProblemInstance, endpoints, lam,
                            index: DistanceIndex | None = None) -> DecisionOutcome:
    """Both centers restricted to the endpoint path: feasible iff the
    leftmost upper end and the rightmost lower end pierce every interval."""
    idx = index if index is not None else DistanceIndex(inst)
    p, q = (inst.vertex_point(e) if isinstance(e, int) else e for e in endpoints)
    bps = _path_breakpoints(inst, idx, p, q)
    intervals = []
    for up in inst.uncertain_points:
        samples = [(s, up.weight * expected_distance(up, pt, idx)) for pt, s in bps]
        lo, hi = _sublevel_on_breakpoints(samples, lam)
        if lo is None:
            return DecisionOutcome(False)
        intervals.append((lo, hi))
    if not intervals:
        return DecisionOutcome(True, inst.canonical_point(p), inst.canonical_point(p))
    p1 = min(hi for _, hi in intervals)
    p2 = max(lo for lo, _ in intervals)
    for lo, hi in intervals:
        if not (lo <= p1 <= hi or lo <= p2 <= hi):
            return DecisionOutcome(False)
    return DecisionOutcome(
        True,
        inst.canonical_point(_point_on_breakpoints(inst, bps, p1)),
        inst.canonical_point(_point_on_breakpoints(inst, bps, p2)),
    )


# -- one shrink round ---------------------------------------------------


def _early(out):
    return EarlyResult(out)


def _descend(wt, report, c):
    if wt.dummy[c]:
        # stepped off a dummy leaf: drop it and fold its mass at the real
        # neighbor, keeping connectors on the real spine
        nb = next(w for _, w in wt.adj[c] if w in wt.region)
        wt.shrink_to(set(report.comp.verts), nb)
        return
    new_region = set(report.comp.verts)
    new_region.add(c)
    wt.shrink_to(new_region, c)


def shrink_round(wt: WorkingTree, lam, index=None):
    """One pruning round: halve the region by centroid tests, resolve the
    connector cases, prune at least a quarter of the active points, and
    rebuild.  Returns an EarlyResult, a BaseCase signal, or the next
    working tree.
    """
    n_h = len(wt.active)
    if n_h <= BASE_POINTS or wt.non_dummy_vertex_count() <= BASE_VERTICES:
        return BaseCase()
    if len(wt.flags_in_region()) > 1:
        return _early(DecisionOutcome(False))
    inst, idx = wt.inst, wt.idx

    steps = 0
    cap_steps = 2 * max(1, len(wt.region)).bit_length() + 2
    while True:
        if steps >= 1 and len(wt.touching_counts()) <= n_h // 2:
            break
        if steps >= cap_steps or len(wt.region) < 3:
            break
        c = wt.region_centroid()
        r = point_test(wt, ('v', c), lam, idx)
        if r.outcome == 'center':
            return _early(center_at_decide(inst, r.x, lam, idx))
        if r.outcome == 'infeasible':
            return _early(DecisionOutcome(False))
        if r.outcome == 'fallback':
            return _fallback_decide(inst, r.x, lam, idx)
        _descend(wt, r, c)
        steps += 1
        if len(wt.flags_in_region()) > 1:
            return _early(DecisionOutcome(False))

    connectors = wt.region_connectors()
    while len(connectors) > 2:
        z = wt.connector_centroid()
        r = point_test(wt, ('v', z), lam, idx)
        if r.outcome == 'center':
            return _early(center_at_decide(inst, r.x, lam, idx))
        if r.outcome == 'infeasible':
            return _early(DecisionOutcome(False))
        if r.outcome == 'fallback':
            return _fallback_decide(inst, r.x, lam, idx)
        _descend(wt, r, z)
        if len(wt.flags_in_region()) > 1:
            return _early(DecisionOutcome(False))
        connectors = wt.region_connectors()
    if not connectors:
        return BaseCase()
    if len(connectors) == 1:
        return _prune_single(wt, connectors[0], lam)
    return _prune_path(wt, connectors[0], connectors[1], lam)


def _rebuild_checked(wt, spine, pruned):
    kept = [i for i in wt.active if i not in pruned]
    nt = wt.rebuild(spine, kept)
    if len(nt.flags_in_region()) > 1:
        return _early(DecisionOutcome(False))
    return nt


def _prune_single(wt, c, lam):
    """Connector case C=1: every point living wholly behind c is either
    promised away (flagged c) or dominated by the tightest of them."""
    touching = wt.touching_counts()
    outside = [i for i in wt.active if i not in touching]
    if wt.flag[c]:
        pruned = set(outside)
    else:
        info = wt.connectors[c]
        best = None
        for i in outside:
            ti = (lam - info.dist_sum.get(i, 0)) / wt.weights[i]
            if best is None or ti < best[0] or (ti == best[0] and i < best[1]):
                best = (ti, i)
        pruned = set(outside)
        if best is not None:
            pruned.discard(best[1])
    return _rebuild_checked(wt, sorted(wt.region), pruned)


def _path_side(comp, c1, c2):
    if not comp.navigable:
        return 'pseudo'
    verts = set(comp.verts)
    if c2 in verts:
        return 'c2'
    if c1 in verts:
        return 'c1'
    return 'hang'


def _materialize(wt, place):
    place = wt.normalize_place(place)
    if place[0] == 'v':
        return place[1]
    return wt.split_edge(place[1], place[2])


def _place_on_path(wt, pverts, peids, pos, t):
    for k, v in enumerate(pverts):
        if t == pos[k]:
            return ('v', v)
        if k + 1 < len(pverts) and pos[k] < t < pos[k + 1]:
            eid = peids[k]
            a = wt.edges[eid][0]
            local = t - pos[k] if a == v else wt.edges[eid][2] - (t - pos[k])
            return ('e', eid, local)
    raise AssertionError("position outside the path")


def _prune_path(wt, c1, c2, lam):
    """Connector case C=2: demands hang off the c1-c2 path or pin down a
    stretch of it; prune the points living wholly behind the connectors."""
    inst, idx = wt.inst, wt.idx
    pverts, peids = wt.path_between(c1, c2)
    pos = [Fraction(0)]
    for eid in peids:
        pos.append(pos[-1] + wt.edges[eid][2])
    d12 = pos[-1]
    path_set = set(pverts)

    det = center_detect(wt, pverts, lam, idx)
    if det.outcome == 'infeasible':
        return _early(DecisionOutcome(False))
    if det.outcome == 'fallback':
        return _fallback_decide(inst, wt.vert_origin[pverts[0]], lam, idx)
    if det.outcome == 'subtree':
        new_region = set(det.comp.verts) | {det.vertex}
        wt.shrink_to(new_region, det.vertex)
        if len(wt.flags_in_region()) > 1:
            return _early(DecisionOutcome(False))
        return _prune_single(wt, det.vertex, lam)
    if det.outcome == 'delegated':
        r = det.delegate
        if r.outcome == 'center':
            return _early(center_at_decide(inst, r.x, lam, idx))
        if r.outcome == 'infeasible':
            return _early(DecisionOutcome(False))
        if r.outcome == 'fallback':
            return _fallback_decide(inst, r.x, lam, idx)
        side = _path_side(r.comp, c1, c2)
        if side == 'pseudo':
            return _fallback_decide(inst, r.x, lam, idx)
        new_region = set(r.comp.verts) | {det.vertex}
        wt.shrink_to(new_region, det.vertex)
        if len(wt.flags_in_region()) > 1:
            return _early(DecisionOutcome(False))
        if side == 'hang':
            return _prune_single(wt, det.vertex, lam)
        other = c2 if side == 'c2' else c1
        return _prune_path(wt, *sorted((det.vertex, other)), lam)

    # the path itself must hold a center; classify the outside points
    touching = wt.touching_counts()
    outside = [i for i in wt.active if i not in touching]
    if wt.flag[c2] and not wt.flag[c1]:
        c1, c2 = c2, c1
        pverts.reverse()
        peids.reverse()
        pos = [d12 - t for t in reversed(pos)]
    info1, info2 = wt.connectors[c1], wt.connectors[c2]
    side1, side2 = [], []
    coef = {}
    for i in outside:
        f1 = info1.prob_sum.get(i, 0)
        f2 = info2.prob_sum.get(i, 0)
        assert f1 + f2 == 1, "outside points live wholly behind the connectors"
        base = info1.dist_sum.get(i, 0) + info2.dist_sum.get(i, 0) \
            + wt.weights[i] * f2 * d12
        slope = wt.weights[i] * (f1 - f2)
        coef[i] = (base, slope)
        (side1 if f1 >= HALF else side2).append(i)

    def threshold(i):
        base, slope = coef[i]
        if slope == 0:
            return math.inf if base <= lam else None
        return (lam - base) / slope

    if wt.flag[c1]:
        # the c1 side is promised; walk to the last position covering side2
        t_hi = -math.inf
        det2 = None
        for i in side2:
            ti = threshold(i)  # slope < 0 on this side, always finite
            if ti > t_hi:
                t_hi, det2 = ti, i
        if t_hi < 0:
            return _rebuild_checked(wt, pverts, set(outside))
        place = _place_on_path(wt, pverts, peids, pos, min(t_hi, d12))
        r = point_test(wt, place, lam, idx)
        if r.outcome == 'center':
            return _early(center_at_decide(inst, r.x, lam, idx))
        if r.outcome == 'infeasible':
            return _early(DecisionOutcome(False))
        if r.outcome == 'fallback':
            return _fallback_decide(inst, r.x, lam, idx)
        side = _path_side(r.comp, c1, c2)
        if side == 'pseudo':
            return _fallback_decide(inst, r.x, lam, idx)
        v_new = r.joined if r.joined is not None else _materialize(wt, place)
        if side == 'hang':
            new_region = set(r.comp.verts) | {v_new}
            wt.shrink_to(new_region, v_new)
            if len(wt.flags_in_region()) > 1:
                return _early(DecisionOutcome(False))
            return _prune_single(wt, v_new, lam)
        if side == 'c2':
            wt.flag[v_new] = True  # carries the c1-side promise forward
            spine, _ = wt.path_between(v_new, c2)
            return _rebuild_checked(wt, spine, set(outside))
        # unexpected turn back toward the promised side; keep side2 active
        spine, _ = wt.path_between(c1, v_new)
        return _rebuild_checked(wt, spine, set(side1))

    # both connectors unflagged
    x1 = math.inf   # last position covering all of side1
    det1 = None
    for i in side1:
        ti = threshold(i)
        if ti is None:
            return _early(DecisionOutcome(False))  # flat above lam everywhere
        if ti < x1:
            x1, det1 = ti, i
    x2 = -math.inf  # first position covering all of side2
    det2 = None
    for i in side2:
        ti = threshold(i)
        if ti > x2:
            x2, det2 = ti, i

    flags = wt.flags_in_region()
    if not flags:
        # no promises anywhere: both centers may be confined to the path
        return _early(path_constrained_decide(
            inst, (wt.vert_origin[c1], wt.vert_origin[c2]), lam, idx))
    # locate the single promise along the path
    v_f = flags[0]
    if v_f in path_set:
        p_f = pos[pverts.index(v_f)]
    else:
        walk, _ = wt.path_between(c1, v_f)
        anchor = next(v for v in reversed(walk) if v in path_set)
        p_f = pos[pverts.index(anchor)]

    def clampt(t):
        if t == math.inf:
            return d12
        if t == -math.inf:
            return Fraction(0)
        return min(max(t, Fraction(0)), d12)

    if x1 == x2:
        place = _place_on_path(wt, pverts, peids, pos, clampt(x1))
        r = point_test(wt, place, lam, idx)
        if r.outcome == 'center':
            return _early(center_at_decide(inst, r.x, lam, idx))
        if r.outcome == 'infeasible':
            return _early(DecisionOutcome(False))
        if r.outcome == 'fallback':
            return _fallback_decide(inst, r.x, lam, idx)
        side = _path_side(r.comp, c1, c2)
        if side == 'pseudo':
            return _fallback_decide(inst, r.x, lam, idx)
        v_new = r.joined if r.joined is not None else _materialize(wt, place)
        if side == 'hang':
            new_region = set(r.comp.verts) | {v_new}
            wt.shrink_to(new_region, v_new)
            if len(wt.flags_in_region()) > 1:
                return _early(DecisionOutcome(False))
            return _prune_single(wt, v_new, lam)
        wt.flag[v_new] = True
        if side == 'c2':
            spine, _ = wt.path_between(v_new, c2)
            pruned = set(outside) - {det2}
        else:
            spine, _ = wt.path_between(c1, v_new)
            pruned = set(outside) - {det1}
        return _rebuild_checked(wt, spine, pruned)

    if x1 < x2:
        # the two coverage stretches are disjoint: continue on the side
        # whose stretch is free of the promise
        if p_f < x2:
            v_new = _materialize(wt, _place_on_path(wt, pverts, peids, pos, clampt(x2)))
            wt.flag[v_new] = True
            spine, _ = wt.path_between(v_new, c2)
            pruned = set(outside) - {det2}
        else:
            v_new = _materialize(wt, _place_on_path(wt, pverts, peids, pos, clampt(x1)))
            wt.flag[v_new] = True
            spine, _ = wt.path_between(c1, v_new)
            pruned = set(outside) - {det1}
        return _rebuild_checked(wt, spine, pruned)

    # overlapping stretches: one position covers everything outside
    if p_f <= x2:
        v_new = _materialize(wt, _place_on_path(wt, pverts, peids, pos, clampt(x2)))
        wt.flag[v_new] = True
        spine, _ = wt.path_between(v_new, c2)
        return _rebuild_checked(wt, spine, set(outside) - {det2})
    if p_f >= x1:
        v_new = _materialize(wt, _place_on_path(wt, pverts, peids, pos, clampt(x1)))
        wt.flag[v_new] = True
        spine, _ = wt.path_between(c1, v_new)
        return _rebuild_checked(wt, spine, set(outside) - {det1})
    # the promise sits strictly inside the overlap: test its anchor
    anchor = pverts[pos.index(p_f)]
    r = point_test(wt, ('v', anchor), lam, idx)
    if r.outcome == 'center':
        return _early(center_at_decide(inst, r.x, lam, idx))
    if r.outcome == 'infeasible':
        return _early(DecisionOutcome(False))
    if r.outcome == 'fallback':
        return _fallback_decide(inst, r.x, lam, idx)
    side = _path_side(r.comp, c1, c2)
    if side == 'pseudo':
        return _fallback_decide(inst, r.x, lam, idx)
    if side == 'hang':
        new_region = set(r.comp.verts) | {anchor}
        wt.shrink_to(new_region, anchor)
        if len(wt.flags_in_region()) > 1:
            return _early(DecisionOutcome(False))
        return _prune_single(wt, anchor, lam)
    wt.flag[anchor] = True
    if side == 'c2':
        spine, _ = wt.path_between(anchor, c2)
    else:
        spine, _ = wt.path_between(c1, anchor)
    return _rebuild_checked(wt, spine, set(outside))


# -- base case and the full decision ------------------------------------


def base_case_find_edge(wt: WorkingTree, lam, index=None):
    """Centroid descent on a small tree until one real edge remains;
    returns its original edge id, or an EarlyResult found on the way."""
    inst, idx = wt.inst, wt.idx
    while True:
        real_eids = [
            eid for eid, (a, b, _, origin) in enumerate(wt.edges)
            if origin is not None and a in wt.region and b in wt.region
        ]
        if len(real_eids) == 1:
            return wt.edges[real_eids[0]][3][0]
        if not real_eids:
            # region degenerated to a single real vertex plus dummies
            v = min((v for v in wt.region if not wt.dummy[v]), default=None)
            if v is None:
                return _fallback_decide(inst, None, lam, idx)
            return _early(center_at_decide(inst, wt.vert_origin[v], lam, idx))
        if len(wt.flags_in_region()) > 1:
            return _early(DecisionOutcome(False))
        c = wt.region_centroid()
        r = point_test(wt, ('v', c), lam, idx)
        if r.outcome == 'center':
            return _early(center_at_decide(inst, r.x, lam, idx))
        if r.outcome == 'infeasible':
            return _early(DecisionOutcome(False))
        if r.outcome == 'fallback':
            return _fallback_decide(inst, r.x, lam, idx)
        _descend(wt, r, c)


def _map_outcome(out: DecisionOutcome, mapping) -> DecisionOutcome:
    if not out.feasible:
        return out
    return DecisionOutcome(True, mapping.backward(out.center1),
                           mapping.backward(out.center2))


def decide(inst: ProblemInstance, lam, index: DistanceIndex | None = None) -> DecisionOutcome:
    """Can two centers keep every point's weighted expected distance at or
    below lam?  Exact; Feasible outcomes carry witnessing centers."""
    if inst.n == 0:
        p = inst.vertex_point(0)
        return DecisionOutcome(True, p, p) if lam >= 0 else DecisionOutcome(False)
    if lam < 0:
        return DecisionOutcome(False)
    core, mapping = reduce_to_vertex_constrained(inst)
    idx = index if index is not None and core is inst else DistanceIndex(core)
    if max(all_weighted_median_values(core, idx)) > lam:
        return DecisionOutcome(False)  # some point cannot be covered anywhere
    wt = WorkingTree.initial(core, idx)
    rounds = 0
    cap = 2 * (core.n + 2).bit_length() + 8
    while (len(wt.active) > BASE_POINTS and wt.non_dummy_vertex_count() > BASE_VERTICES
           and rounds < cap):
        step = shrink_round(wt, lam, idx)
        if isinstance(step, EarlyResult):
            return _map_outcome(step.outcome, mapping)
        if isinstance(step, BaseCase):
            break
        wt = step
        rounds += 1
    res = base_case_find_edge(wt, lam, idx)
    if isinstance(res, EarlyResult):
        return _map_outcome(res.outcome, mapping)
    return _map_outcome(peripheral_edge_decide(core, res, lam, idx), mapping)
