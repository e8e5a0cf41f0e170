"""Round-local search structure for the decision procedure.

A WorkingTree holds one round's tree: a real spine (a subtree of the
original tree, possibly with joined split vertices) plus dummy leaves,
each standing for one relocated location at its exact original distance.
During a round, regions shrink and connector vertices absorb everything
pruned behind them into per-point mass and weighted-distance arrays.

The structure of the full round tree is never mutated while shrinking;
the region overlay plus connector arrays describe the current state, so
end-of-round rebuilds can re-traverse the raw structure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .instance import ProblemInstance, TreePoint
from .tree import DistanceIndex


@dataclass
class ConnectorInfo:
    """Per-point summaries of a pruned region behind a connector vertex.

    prob_sum[i] = probability mass of P_i in the region; dist_sum[i] =
    sum of w_i * f_ij * d(p_ij, c) over the region's locations.
    Missing keys mean zero.
    """

    prob_sum: dict = field(default_factory=dict)
    dist_sum: dict = field(default_factory=dict)


DUMMY_SIDE = -1      # pseudo-component bundling a vertex's incident dummy leaves
CONNECTOR_SIDE = -2  # pseudo-component holding a connector's folded arrays


@dataclass
class Component:
    """One split subtree seen from a test point.

    Pseudo-components (bundled dummy leaves, folded connector arrays)
    carry mass and load like real ones but cannot be descended into.
    """

    key: int                # local edge id leaving the test point, or a pseudo key
    entry: int              # first vertex inside (-1 for pseudo)
    verts: list
    has_flag: bool
    has_real_edge: bool
    mass: dict              # per-point probability mass inside
    load: dict              # per-point w*Ed contribution from inside
    navigable: bool = True


class WorkingTree:
    def __init__(self, inst: ProblemInstance, idx: DistanceIndex, active):
        self.inst = inst
        self.idx = idx
        self.active = sorted(active)
        self.weights = {i: inst.uncertain_points[i].weight for i in self.active}
        self.adj = []          # per vertex: list of (local edge id, neighbor)
        self.edges = []        # [a, b, length, origin] origin=(orig eid, off_a, off_b) or None
        self.vert_origin = []  # original TreePoint of each local vertex
        self.vert_id = []      # original vertex id, None for dummy/joined vertices
        self.dummy = []        # vertex-level dummy marker
        self.flag = []
        self.locs = []         # per vertex: list of (point id, original TreePoint, prob)
        self.absorbed = []     # True when locs[v] is folded into v's connector arrays
        self.connectors = {}   # vertex -> ConnectorInfo
        self.region = set()

    # -- construction ---------------------------------------------------

    def _add_vertex(self, origin_point, orig_id, dummy):
        v = len(self.adj)
        self.adj.append([])
        self.vert_origin.append(origin_point)
        self.vert_id.append(orig_id)
        self.dummy.append(dummy)
        self.flag.append(False)
        self.locs.append([])
        self.absorbed.append(False)
        return v

    def _add_edge(self, a, b, length, origin):
        eid = len(self.edges)
        self.edges.append([a, b, length, origin])
        self.adj[a].append((eid, b))
        self.adj[b].append((eid, a))
        return eid

    @classmethod
    def initial(cls, inst: ProblemInstance, idx: DistanceIndex, active=None):
        wt = cls(inst, idx, range(inst.n) if active is None else active)
        for v in range(inst.vertex_count):
            wt._add_vertex(inst.vertex_point(v), v, False)
        for eid, (u, v, length) in enumerate(inst.edges):
            wt._add_edge(u, v, length, (eid, Fraction(0), length))
        for i in wt.active:
            for loc, f in inst.uncertain_points[i].locations:
                v = inst.point_vertex(loc)
                if v is None:
                    raise ValueError("decision rounds need a vertex-constrained instance")
                wt.locs[v].append((i, loc, f))
        wt.region = set(range(inst.vertex_count))
        return wt

    # -- basic queries --------------------------------------------------

    def edge_length(self, eid):
        return self.edges[eid][2]

    def other_end(self, eid, v):
        a, b, _, _ = self.edges[eid]
        return b if v == a else a

    def non_dummy_vertex_count(self):
        return sum(1 for v in self.region if not self.dummy[v])

    def flags_in_region(self):
        return [v for v in self.region if self.flag[v]]

    def region_connectors(self):
        return sorted(c for c in self.connectors if c in self.region)

    def touching_counts(self):
        """Set of active points holding a raw location at a region vertex."""
        seen = set()
        for v in self.region:
            if self.absorbed[v]:
                continue
            for i, _, _ in self.locs[v]:
                seen.add(i)
        return seen

    def region_centroid(self):
        region = self.region
        root = min(region)
        parent = {root: -1}
        order = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for _, w in self.adj[v]:
                if w in region and w not in parent:
                    parent[w] = v
                    order.append(w)
                    stack.append(w)
        size = dict.fromkeys(region, 1)
        for v in reversed(order):
            if parent[v] >= 0:
                size[parent[v]] += size[v]
        total = len(region)
        half = total // 2
        for v in sorted(region):
            heaviest = total - size[v]
            for _, w in self.adj[v]:
                if w in region and parent.get(w) == v and size[w] > heaviest:
                    heaviest = size[w]
            if heaviest <= half:
                return v
        raise AssertionError("centroid must exist")

    def connector_centroid(self):
        """Vertex whose removal leaves at most half the region's connectors
        in every component; smallest vertex id on ties.
        """
        marked = set(self.region_connectors())
        count = len(marked)
        region = self.region
        root = min(region)
        parent = {root: -1}
        order = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for _, w in self.adj[v]:
                if w in region and w not in parent:
                    parent[w] = v
                    order.append(w)
                    stack.append(w)
        csize = {v: (1 if v in marked else 0) for v in region}
        for v in reversed(order):
            if parent[v] >= 0:
                csize[parent[v]] += csize[v]
        half = count // 2
        for v in sorted(region):
            heaviest = count - csize[v]
            for _, w in self.adj[v]:
                if w in region and parent.get(w) == v and csize[w] > heaviest:
                    heaviest = csize[w]
            if heaviest <= half:
                return v
        raise AssertionError("connector centroid must exist")

    # -- shrink operations ----------------------------------------------

    def attach_connector(self, c, pruned) -> ConnectorInfo:
        """Fold the pruned region {c} ∪ pruned-side into c's arrays.

        pruned is the vertex set being cut away, including c itself.
        Existing arrays on c merge; nested connectors inside fold via
        their own arrays at their distance from c.
        """
        info = self.connectors.get(c)
        if info is None:
            info = ConnectorInfo()
            self.connectors[c] = info
        F, D = info.prob_sum, info.dist_sum
        weights = self.weights
        stack = [(c, 0)]
        seen = {c}
        while stack:
            v, dist = stack.pop()
            if v != c and v in self.connectors:
                sub = self.connectors[v]
                for i, fv in sub.prob_sum.items():
                    F[i] = F.get(i, 0) + fv
                    D[i] = D.get(i, 0) + sub.dist_sum[i] + weights[i] * fv * dist
            if not self.absorbed[v]:
                for i, _, f in self.locs[v]:
                    F[i] = F.get(i, 0) + f
                    D[i] = D.get(i, 0) + weights[i] * f * dist
            if v != c:
                assert not self.flag[v] or self.flag[c], "pruned flag must be carried"
                self.flag[v] = False
            self.absorbed[v] = True
            for eid, w in self.adj[v]:
                if w in pruned and w not in seen:
                    seen.add(w)
                    stack.append((w, dist + self.edges[eid][2]))
        # folded connectors are now summarized by c
        for v in seen:
            if v != c and v in self.connectors:
                del self.connectors[v]
        return info

    def shrink_to(self, new_region, c):
        """Make c a connector and restrict the region to new_region (∋ c)."""
        pruned = (self.region - set(new_region)) | {c}
        info = self.attach_connector(c, pruned)
        self.region = set(new_region)
        return info

    # -- split-subtree census -------------------------------------------

    def components_at_vertex(self, x):
        """Census of the region split at vertex x.

        Real components are keyed by the local edge id leaving x; all of
        x's incident dummy edges bundle into one pseudo-component, and a
        connector's folded arrays become another.  A flag on x itself is
        attributed to the direction it promises: the connector side when
        x is a connector, else the dummy bundle; with neither present the
        second return value reports the flag as direction-less.
        """
        weights = self.weights
        comps = []
        bundle = None
        seen_global = {x}
        for eid, nb in sorted(self.adj[x]):
            if nb not in self.region or nb in seen_global:
                continue
            seen_global.add(nb)
            if self.edges[eid][3] is None:
                # dummy edges end in leaves; fold them into one bundle
                if bundle is None:
                    bundle = Component(DUMMY_SIDE, -1, [], False, False, {}, {}, False)
                bundle.verts.append(nb)
                if self.flag[nb]:
                    bundle.has_flag = True
                dist = self.edges[eid][2]
                if nb in self.connectors:
                    sub = self.connectors[nb]
                    for i, fv in sub.prob_sum.items():
                        bundle.mass[i] = bundle.mass.get(i, 0) + fv
                        bundle.load[i] = (
                            bundle.load.get(i, 0) + sub.dist_sum[i] + weights[i] * fv * dist
                        )
                if not self.absorbed[nb]:
                    for i, _, f in self.locs[nb]:
                        bundle.mass[i] = bundle.mass.get(i, 0) + f
                        bundle.load[i] = bundle.load.get(i, 0) + weights[i] * f * dist
                continue
            comp = Component(eid, nb, [], False, True, {}, {})
            stack = [(nb, self.edges[eid][2])]
            while stack:
                v, dist = stack.pop()
                comp.verts.append(v)
                if self.flag[v]:
                    comp.has_flag = True
                if v in self.connectors:
                    sub = self.connectors[v]
                    for i, fv in sub.prob_sum.items():
                        comp.mass[i] = comp.mass.get(i, 0) + fv
                        comp.load[i] = (
                            comp.load.get(i, 0) + sub.dist_sum[i] + weights[i] * fv * dist
                        )
                if not self.absorbed[v]:
                    for i, _, f in self.locs[v]:
                        comp.mass[i] = comp.mass.get(i, 0) + f
                        comp.load[i] = comp.load.get(i, 0) + weights[i] * f * dist
                for e2, w in self.adj[v]:
                    if w in self.region and w not in seen_global:
                        seen_global.add(w)
                        stack.append((w, dist + self.edges[e2][2]))
            comps.append(comp)
        if bundle is not None:
            comps.append(bundle)
        conn = None
        if x in self.connectors:
            info = self.connectors[x]
            conn = Component(
                CONNECTOR_SIDE, -1, [], False, False,
                dict(info.prob_sum), dict(info.dist_sum), False,
            )
            comps.append(conn)
        phantom_flag = False
        if self.flag[x]:
            if conn is not None:
                conn.has_flag = True
            elif bundle is not None:
                bundle.has_flag = True
            else:
                phantom_flag = True
        return comps, phantom_flag

    def components_at_edge_point(self, eid, t):
        """The two components around an interior point of a local edge."""
        a, b, length, _ = self.edges[eid]
        comps = []
        for end, dist0 in ((a, t), (b, length - t)):
            comp = Component(eid, end, [], False, False, {}, {})
            stack = [(end, dist0)]
            seen = {end}
            weights = self.weights
            while stack:
                v, dist = stack.pop()
                comp.verts.append(v)
                if self.flag[v]:
                    comp.has_flag = True
                if v in self.connectors:
                    sub = self.connectors[v]
                    for i, fv in sub.prob_sum.items():
                        comp.mass[i] = comp.mass.get(i, 0) + fv
                        comp.load[i] = (
                            comp.load.get(i, 0) + sub.dist_sum[i] + weights[i] * fv * dist
                        )
                if not self.absorbed[v]:
                    for i, _, f in self.locs[v]:
                        comp.mass[i] = comp.mass.get(i, 0) + f
                        comp.load[i] = comp.load.get(i, 0) + weights[i] * f * dist
                for e2, w in self.adj[v]:
                    if e2 == eid:
                        continue
                    if w in self.region and w not in seen:
                        seen.add(w)
                        if self.edges[e2][3] is not None:
                            comp.has_real_edge = True
                        stack.append((w, dist + self.edges[e2][2]))
            comps.append(comp)
        comps[0].key, comps[1].key = -1, -2  # sides of one edge, not adjacency keys
        return comps

    # -- structure edits ------------------------------------------------

    def split_edge(self, eid, t):
        """Join a vertex at parameter t inside a real local edge."""
        a, b, length, origin = self.edges[eid]
        assert origin is not None, "cannot join inside a dummy edge"
        assert 0 < t < length
        oeid, off_a, off_b = origin
        step = t if off_b > off_a else -t
        off_mid = off_a + step
        v = self._add_vertex(TreePoint(oeid, off_mid), None, False)
        # shorten eid to (a, v) and add (v, b)
        self.adj[b] = [(e, w) for e, w in self.adj[b] if e != eid]
        self.edges[eid] = [a, v, t, (oeid, off_a, off_mid)]
        self.adj[v].append((eid, a))
        self._add_edge(v, b, length - t, (oeid, off_mid, off_b))
        if self.region:
            self.region.add(v)
        return v

    # -- places -----------------------------------------------------------
    # A place is ('v', vertex) or ('e', local edge id, t) with 0 < t < length.

    def normalize_place(self, place):
        if place[0] == 'v':
            return place
        _, eid, t = place
        a, b, length, _ = self.edges[eid]
        if t == 0:
            return ('v', a)
        if t == length:
            return ('v', b)
        return place

    def origin_of_place(self, place):
        """Original-tree TreePoint under a place."""
        place = self.normalize_place(place)
        if place[0] == 'v':
            return self.vert_origin[place[1]]
        _, eid, t = place
        origin = self.edges[eid][3]
        assert origin is not None, "no original image inside a dummy edge"
        oeid, off_a, off_b = origin
        off = off_a + (t if off_b > off_a else -t)
        return TreePoint(oeid, off)

    def path_between(self, a, b):
        """(vertices, edges) along the unique region path from a to b."""
        prev = {a: (None, None)}
        stack = [a]
        while stack and b not in prev:
            v = stack.pop()
            for eid, w in self.adj[v]:
                if w in self.region and w not in prev:
                    prev[w] = (v, eid)
                    stack.append(w)
        verts = [b]
        eids = []
        v = b
        while v != a:
            pv, pe = prev[v]
            eids.append(pe)
            verts.append(pv)
            v = pv
        return verts[::-1], eids[::-1]

    # -- end-of-round rebuild -------------------------------------------

    def rebuild(self, spine, kept_points):
        """Fresh WorkingTree on the given spine vertices.

        Everything off the spine collapses to dummy leaves holding the
        kept points' locations at their exact distances; flags met during
        collapse move to the attachment vertex.
        """
        spine = sorted(set(spine))
        spine_set = set(spine)
        kept = set(kept_points)
        nt = WorkingTree(self.inst, self.idx, kept)
        local = {}
        for v in spine:
            local[v] = nt._add_vertex(self.vert_origin[v], self.vert_id[v], self.dummy[v])
            nt.flag[local[v]] = self.flag[v]
            for i, loc, f in self.locs[v]:
                if i in kept:
                    nt.locs[local[v]].append((i, loc, f))
        added = set()
        for eid, (a, b, length, origin) in enumerate(self.edges):
            if a in spine_set and b in spine_set and eid not in added:
                added.add(eid)
                nt._add_edge(local[a], local[b], length, origin)
        for v in spine:
            for eid, nb in self.adj[v]:
                if nb in spine_set:
                    continue
                # collapse the hanging part behind (v, nb)
                stack = [(nb, self.edges[eid][2])]
                seen = {nb, v}
                while stack:
                    u, dist = stack.pop()
                    if self.flag[u]:
                        nt.flag[local[v]] = True
                    for i, loc, f in self.locs[u]:
                        if i in kept:
                            leaf = nt._add_vertex(loc, None, True)
                            nt._add_edge(local[v], leaf, dist, None)
                            nt.locs[leaf].append((i, loc, f))
                    for e2, w in self.adj[u]:
                        if w not in seen:
                            seen.add(w)
                            stack.append((w, dist + self.edges[e2][2]))
        nt.region = set(range(len(nt.adj)))
        return nt
