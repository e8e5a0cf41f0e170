"""Weighted one-center under a 0/1 mask.

Minimizes g(x) = max_i mask_i * w_i * Ed(P_i, x).  Small trees are solved
by minimizing the line envelope on every edge; larger ones by centroid
descent, which follows the unique strictly-decreasing direction of the
convex objective until a vertex or a final edge pins the minimum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .envelope import minimize_max_on_interval, sublevel_interval
from .instance import ProblemInstance, TreePoint
from .metrics import edge_lines, median
from .tree import DistanceIndex, region_centroid

_BRUTE_LIMIT = 160


@dataclass(frozen=True)
class OneCenterResult:
    center: TreePoint
    value: object  # Fraction on exact instances, float on float instances


def one_center(inst: ProblemInstance, weight_mask, index: DistanceIndex | None = None,
               canonical: bool = True) -> OneCenterResult:
    """Best single center for the masked points; ties break to the
    lexicographically smallest canonical point.
    """
    idx = index if index is not None else DistanceIndex(inst)
    active = [
        i
        for i, up in enumerate(inst.uncertain_points)
        if weight_mask[i] and up.weight > 0
    ]
    if not active:
        return OneCenterResult(inst.vertex_point(0), 0)
    if len(active) == 1:
        up = inst.uncertain_points[active[0]]
        med = median(up, inst, idx)
        return OneCenterResult(med.point, up.weight * med.value)

    ev = _make_evaluator(inst, idx, active)
    if inst.vertex_count <= _BRUTE_LIMIT:
        return _brute(inst, ev)
    return _descent(inst, idx, ev, canonical)


def _brute(inst, ev):
    best_val = None
    best_pt = None
    for eid, (_, _, length) in enumerate(inst.edges):
        lines = ev.lines_on_edge(eid)
        val, lo, _ = minimize_max_on_interval(lines, 0, length)
        pt = inst.canonical_point(TreePoint(eid, lo))
        if best_val is None or val < best_val or (val == best_val and pt < best_pt):
            best_val, best_pt = val, pt
    return OneCenterResult(best_pt, best_val)


def _descent(inst, idx, ev, canonical):
    adj = inst.adjacency
    region = set(range(inst.vertex_count))
    final = None
    while True:
        if len(region) == 2:
            a, b = sorted(region)
            for eid, nb in adj[a]:
                if nb == b:
                    final = eid
                    break
            break
        c = region_centroid(inst, region)
        g_c, tights = ev.value_at_vertex(c)
        down = None
        for eid, b in adj[c]:
            if b not in region:
                continue
            # strict decrease toward b needs every tight point to hold a
            # strict mass majority on b's side
            if all(ev.mass_toward(k, c, b, eid) > 0.5 for k in tights):
                down = (eid, b)
                break
        if down is None:
            # no descending direction: c attains the global minimum
            if canonical:
                return _canonicalize(inst, ev, g_c, [c], [])
            return OneCenterResult(inst.vertex_point(c), g_c)
        comp = {down[1]}
        stack = [down[1]]
        while stack:
            v = stack.pop()
            for _, w in adj[v]:
                if w != c and w in region and w not in comp:
                    comp.add(w)
                    stack.append(w)
        comp.add(c)
        region = comp

    u, v, length = inst.edges[final]
    lines = ev.lines_on_edge(final)
    val, lo, hi = minimize_max_on_interval(lines, 0, length)
    if canonical:
        return _canonicalize(inst, ev, val, [], [(final, lo, hi)])
    return OneCenterResult(inst.canonical_point(TreePoint(final, lo)), val)


def _canonicalize(inst, ev, value, seed_vertices, seed_intervals):
    """Lexicographic minimum over the connected set attaining the optimum.

    The optimum set equals the value-sublevel set, so expanding it edge by
    edge from any witness covers it completely.
    """
    cand = []
    seen_v = set()
    queue = list(seed_vertices)
    for eid, lo, hi in seed_intervals:
        cand.append(inst.canonical_point(TreePoint(eid, lo)))
        u, v, length = inst.edges[eid]
        if lo == 0:
            queue.append(u)
        if hi == length:
            queue.append(v)
    while queue:
        x = queue.pop()
        if x in seen_v:
            continue
        seen_v.add(x)
        cand.append(inst.vertex_point(x))
        for eid, b in inst.adjacency[x]:
            if b in seen_v:
                continue
            u, v, length = inst.edges[eid]
            got = sublevel_interval(ev.lines_on_edge(eid), value, 0, length)
            if got is None:
                continue
            lo, hi = got
            if lo < hi:
                cand.append(inst.canonical_point(TreePoint(eid, lo)))
            if lo == 0:
                queue.append(u)
            if hi == length:
                queue.append(v)
    return OneCenterResult(min(cand), value)


# -- evaluators ---------------------------------------------------------


class _ExactEval:
    def __init__(self, inst, idx, active):
        self.inst = inst
        self.idx = idx
        self.active = active
        self.ups = [inst.uncertain_points[i] for i in active]

    def value_at_vertex(self, c):
        idx = self.idx
        best = None
        vals = []
        for up in self.ups:
            v = up.weight * sum(
                f * idx.point_vertex_distance(loc, c) for loc, f in up.locations
            )
            vals.append(v)
            if best is None or v > best:
                best = v
        tights = [k for k, v in enumerate(vals) if v == best]
        return best, tights

    def mass_toward(self, k, c, b, eid):
        idx = self.idx
        return sum(
            f for loc, f in self.ups[k].locations if idx.in_branch(loc, c, b, eid)
        )

    def lines_on_edge(self, eid):
        lines = []
        for up in self.ups:
            lines.extend(edge_lines(self.inst, up, eid, self.idx))
        return lines


class _BatchEval:
    """Numpy evaluation for float, vertex-held instances."""

    def __init__(self, inst, idx, active):
        self.inst = inst
        self.idx = idx
        self.active = active
        vtx = []
        prob = []
        owner = []
        for k, i in enumerate(active):
            for loc, f in inst.uncertain_points[i].locations:
                v = inst.point_vertex(loc)
                if v is None:
                    raise _Unsupported
                vtx.append(v)
                prob.append(f)
                owner.append(k)
        self.vtx = np.asarray(vtx, dtype=np.int64)
        self.prob = np.asarray(prob, dtype=np.float64)
        self.owner = np.asarray(owner, dtype=np.int64)
        self.w = np.asarray(
            [inst.uncertain_points[i].weight for i in active], dtype=np.float64
        )

    def _values(self, c):
        d = self.idx.batch_vertex_distance(self.vtx, c)
        return self.w * np.bincount(
            self.owner, weights=self.prob * d, minlength=len(self.active)
        )

    def value_at_vertex(self, c):
        vals = self._values(c)
        best = vals.max()
        return best, np.flatnonzero(vals == best).tolist()

    def mass_toward(self, k, c, b, eid):
        inst = self.inst
        idx = self.idx
        return sum(
            f
            for loc, f in inst.uncertain_points[self.active[k]].locations
            if idx.in_branch(loc, c, b, eid)
        )

    def lines_on_edge(self, eid):
        u, v, length = self.inst.edges[eid]
        base = self._values(u)
        du = self.idx.batch_vertex_distance(self.vtx, u)
        dv = self.idx.batch_vertex_distance(self.vtx, v)
        uside = dv == du + length
        mass_u = np.bincount(
            self.owner, weights=self.prob * uside, minlength=len(self.active)
        )
        slope = self.w * (2 * mass_u - 1)
        return list(zip(slope.tolist(), base.tolist()))


class _Unsupported(Exception):
    pass


def _make_evaluator(inst, idx, active):
    if isinstance(inst.edges[0][2], float):
        try:
            return _BatchEval(inst, idx, active)
        except _Unsupported:
            pass
    return _ExactEval(inst, idx, active)
