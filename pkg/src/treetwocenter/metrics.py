"""Expected distances, per-edge linear forms, medians, and the objective.

Ed(P_i, x) = sum_j f_ij * d(p_ij, x) is stored and returned unweighted;
callers multiply by w_i where a weighted value is meant.  Along any edge
the weighted function t -> w*Ed is linear when the point has no location
interior to that edge, which is the normal case after reduction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .instance import ProblemInstance, TreePoint, UncertainPoint
from .tree import DistanceIndex


def expected_distance(up: UncertainPoint, x: TreePoint, idx: DistanceIndex):
    total = 0
    for loc, prob in up.locations:
        total += prob * idx.distance(loc, x)
    return total


def objective_phi(inst: ProblemInstance, x1: TreePoint, x2: TreePoint, idx: DistanceIndex):
    best = 0
    for up in inst.uncertain_points:
        served = min(expected_distance(up, x1, idx), expected_distance(up, x2, idx))
        value = up.weight * served
        if value > best:
            best = value
    return best


@dataclass(frozen=True)
class EdgeLinearForm:
    """Weighted expected distance along an edge: value(t) = base + slope*t.

    t measures distance from endpoint u; slope = w_i*(2F - 1) with F the
    probability sum of P_i on u's side.
    """

    base: Fraction
    slope: Fraction

    def value(self, t):
        return self.base + self.slope * t


def edge_linear_form(up: UncertainPoint, side_prob_sum, ed_at_u) -> EdgeLinearForm:
    """Form from the probability sum F on u's side and the unweighted Ed at u."""
    w = up.weight
    return EdgeLinearForm(w * ed_at_u, w * (side_prob_sum - (1 - side_prob_sum)))


def side_probability_sum(inst: ProblemInstance, up: UncertainPoint, eid: int,
                         idx: DistanceIndex):
    """Probability sum of up on the u-side of edge eid (u = lower endpoint).

    Locations interior to the edge itself are rejected; split the instance
    first if any exist.
    """
    u, v, length = inst.edges[eid]
    total = 0
    for loc, prob in up.locations:
        if loc.edge == eid and 0 < loc.offset < length:
            raise ValueError(f"location interior to edge {eid}; no linear form exists")
        if idx.in_branch(loc, v, u, eid) or inst.points_equal(loc, TreePoint(eid, Fraction(0))):
            total += prob
    return total


def form_on_edge(inst: ProblemInstance, up: UncertainPoint, eid: int,
                 idx: DistanceIndex) -> EdgeLinearForm:
    u, v, length = inst.edges[eid]
    f = side_probability_sum(inst, up, eid, idx)
    return edge_linear_form(up, f, expected_distance(up, inst.vertex_point(u), idx))


# -- medians ------------------------------------------------------------


@dataclass(frozen=True)
class MedianResult:
    point: TreePoint          # lexicographically smallest canonical point of the set
    value: Fraction           # unweighted Ed at the median
    case: int                 # 2: unique median point, 3: flat set of positive extent
    segments: tuple           # (edge id, lo, hi) covering the median set


def median(up: UncertainPoint, inst: ProblemInstance, idx: DistanceIndex) -> MedianResult:
    if len(up.locations) == 1:
        p = inst.canonical_point(up.locations[0][0])
        return MedianResult(p, Fraction(0), 2, ((p.edge, p.offset, p.offset),))
    if inst.vertex_count > 64:
        vertex_mass = _vertex_masses(inst, up)
        if vertex_mass is not None:
            return _median_virtual(inst, idx, up, vertex_mass)
    return _median_scan(inst, idx, up)


def _vertex_masses(inst, up):
    """Aggregate per-vertex mass, or None if some location is interior."""
    mass = {}
    for loc, prob in up.locations:
        v = inst.point_vertex(loc)
        if v is None:
            return None
        mass[v] = mass.get(v, 0) + prob
    return mass


def _median_scan(inst, idx, up):
    """Exhaustive minimum over vertices and own locations; desk scale."""
    cands = [inst.vertex_point(v) for v in range(inst.vertex_count)]
    for loc, _ in up.locations:
        cands.append(inst.canonical_point(loc))
    seen = set()
    best_val = None
    values = {}
    for p in cands:
        if p in seen:
            continue
        seen.add(p)
        val = expected_distance(up, p, idx)
        values[p] = val
        if best_val is None or val < best_val:
            best_val = val

    winners = sorted(p for p, val in values.items() if val == best_val)
    point = winners[0]
    # flat segments: between consecutive breakpoints on an edge the function
    # is linear, so a segment is flat iff both breakpoint values are minimal
    segments = []
    for eid, (u, v, length) in enumerate(inst.edges):
        breaks = {Fraction(0), length}
        for loc, _ in up.locations:
            if loc.edge == eid:
                breaks.add(loc.offset)
        cuts = sorted(breaks)
        vals = [values.get(inst.canonical_point(TreePoint(eid, t))) for t in cuts]
        for k in range(len(cuts) - 1):
            a, b = vals[k], vals[k + 1]
            if a is None:
                a = expected_distance(up, TreePoint(eid, cuts[k]), idx)
            if b is None:
                b = expected_distance(up, TreePoint(eid, cuts[k + 1]), idx)
            if a == best_val and b == best_val:
                segments.append((eid, cuts[k], cuts[k + 1]))
    segments = _merge_segments(segments)
    if not segments:
        segments = [(point.edge, point.offset, point.offset)]
        case = 2
    else:
        case = 3
    return MedianResult(point, best_val, case, tuple(segments))


def _merge_segments(segments):
    by_edge = {}
    for eid, lo, hi in segments:
        by_edge.setdefault(eid, []).append((lo, hi))
    out = []
    for eid in sorted(by_edge):
        runs = sorted(by_edge[eid])
        cur_lo, cur_hi = runs[0]
        for lo, hi in runs[1:]:
            if lo <= cur_hi:
                cur_hi = max(cur_hi, hi)
            else:
                out.append((eid, cur_lo, cur_hi))
                cur_lo, cur_hi = lo, hi
        out.append((eid, cur_lo, cur_hi))
    return out


def _median_virtual(inst, idx, up, vertex_mass):
    """Median via the compressed tree over the location vertices.

    Only used for vertex-held locations; the compressed tree keeps every
    pairwise branching vertex, so expected distance is linear along each
    compressed edge and the weighted-majority descent rule applies as is.
    """
    nodes = sorted(vertex_mass, key=lambda v: idx.first[v])
    key = list(nodes)
    for a, b in zip(nodes, nodes[1:]):
        key.append(idx.lca(a, b))
    key = sorted(set(key), key=lambda v: idx.first[v])

    parent = {}
    children = {v: [] for v in key}
    stack = [key[0]]
    for v in key[1:]:
        while stack and not _is_ancestor(idx, stack[-1], v):
            stack.pop()
        parent[v] = stack[-1]
        children[stack[-1]].append(v)
        stack.append(v)

    sub = {v: vertex_mass.get(v, 0) for v in key}
    for v in reversed(key):
        for c in children[v]:
            sub[v] += sub[c]

    node = key[0]
    plateau_edges = []  # (upper, lower) virtual edges with an exact half split
    while True:
        down = None
        half = None
        for c in children[node]:
            if sub[c] > Fraction(1, 2):
                down = c
                break
            if sub[c] == Fraction(1, 2):
                half = c
        if down is not None:
            node = down
            continue
        if half is not None:
            plateau_edges.append((node, half))
            # the split stays exactly 1/2 across the whole flat edge; keep
            # walking to collect the full flat region below
            probe = half
            while True:
                nxt = None
                for c in children[probe]:
                    if sub[c] == Fraction(1, 2):
                        nxt = c
                        break
                if nxt is None:
                    break
                plateau_edges.append((probe, nxt))
                probe = nxt
        break

    value = 0
    for loc, prob in up.locations:
        value += prob * idx.point_vertex_distance(loc, node)

    if not plateau_edges:
        p = inst.vertex_point(node)
        return MedianResult(p, value, 2, ((p.edge, p.offset, p.offset),))

    # expand virtual plateau edges into original-edge segments
    segments = []
    verts = {node}
    for upper, lower in plateau_edges:
        v = lower
        while v != upper:
            pe = idx.parent_edge[v]
            u2, v2, length = inst.edges[pe]
            segments.append((pe, Fraction(0), length))
            verts.add(v)
            v = idx.parent[v]
        verts.add(upper)
    point = min(inst.vertex_point(v) for v in verts)
    return MedianResult(point, value, 3, tuple(_merge_segments(segments)))


def _is_ancestor(idx, a, b):
    return idx.first[a] <= idx.first[b] and idx.lca(a, b) == a


def edge_lines(inst: ProblemInstance, up: UncertainPoint, eid: int, idx: DistanceIndex):
    """Support lines of t -> w*Ed(P, x_t) along edge eid, t measured from u.

    One line when the point has no location interior to the edge; each
    interior location adds a kink and hence one more line.
    """
    u, v, length = inst.edges[eid]
    w = up.weight
    kinks = {}
    mass_u = 0
    for loc, f in up.locations:
        if loc.edge == eid and 0 < loc.offset < length:
            kinks[loc.offset] = kinks.get(loc.offset, 0) + f
        elif idx.in_branch(loc, v, u, eid):
            mass_u += f
    base = w * expected_distance(up, inst.vertex_point(u), idx)
    slope = w * (2 * mass_u - 1)
    lines = [(slope, base)]
    val = base
    prev = 0
    for s in sorted(kinks):
        val += slope * (s - prev)
        slope += 2 * w * kinks[s]
        lines.append((slope, val - slope * s))
        prev = s
    return lines


def all_weighted_median_values(inst: ProblemInstance, idx: DistanceIndex):
    """w_i * Ed(P_i, p*_i) for every point; the floor of any feasible lambda."""
    out = []
    for up in inst.uncertain_points:
        out.append(up.weight * median(up, inst, idx).value)
    return out
