"""Tree topology utilities: distances, centroids, vertex splits.

The distance index answers vertex-to-vertex queries in O(1) after an
O(V log V) build (Euler tour plus a sparse table over depth ranks).
Point-to-point distances reduce to at most four vertex queries.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .instance import ProblemInstance, TreePoint


class DistanceIndex:
    """O(1) tree distances via LCA on an Euler tour.

    Depths stay exact (Fraction); the sparse table works on integer
    first-visit ranks so numpy can take the minima.
    """

    def __init__(self, inst: ProblemInstance):
        self.inst = inst
        nv = inst.vertex_count
        adj = inst.adjacency
        self.depth = [None] * nv
        self.hops = [0] * nv  # edge count from the root, for tour bookkeeping
        self.parent = [-1] * nv
        self.parent_edge = [-1] * nv
        self.order = []  # preorder
        first = [-1] * nv
        tour = []

        # iterative DFS from vertex 0, recording the Euler tour
        stack = [(0, -1, iter(adj[0]))]
        self.depth[0] = Fraction(0)
        first[0] = 0
        tour.append(0)
        self.order.append(0)
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for eid, w in it:
                if eid == pe:
                    continue
                self.depth[w] = self.depth[v] + inst.edge_length(eid)
                self.hops[w] = self.hops[v] + 1
                self.parent[w] = v
                self.parent_edge[w] = eid
                first[w] = len(tour)
                tour.append(w)
                self.order.append(w)
                stack.append((w, eid, iter(adj[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if stack:
                    tour.append(stack[-1][0])

        self.first = first
        m = len(tour)
        ranks = np.fromiter((first[v] for v in tour), dtype=np.int64, count=m)
        self._tour = tour
        levels = max(1, m.bit_length())
        table = np.empty((levels, m), dtype=np.int64)
        table[0] = ranks
        j = 1
        while (1 << j) <= m:
            span = 1 << (j - 1)
            table[j, : m - (span << 1) + 1] = np.minimum(
                table[j - 1, : m - (span << 1) + 1], table[j - 1, span : m - span + 1]
            )
            j += 1
        self._table = table
        self._log = np.zeros(m + 1, dtype=np.int64)
        for i in range(2, m + 1):
            self._log[i] = self._log[i >> 1] + 1

    def _ensure_batch(self):
        if hasattr(self, "_depth_np"):
            return
        self._depth_np = np.array([float(d) for d in self.depth], dtype=np.float64)
        self._first_np = np.asarray(self.first, dtype=np.int64)
        self._tour_np = np.asarray(self._tour, dtype=np.int64)

    def batch_vertex_distance(self, vs, c: int):
        """Vectorized distances from an int array of vertices to vertex c.

        Returns float64; meant for throughput runs on float instances.
        """
        self._ensure_batch()
        fa = self._first_np[vs]
        fb = self.first[c]
        lo = np.minimum(fa, fb)
        hi = np.maximum(fa, fb)
        j = self._log[hi - lo + 1]
        left = self._table[j, lo]
        right = self._table[j, hi - np.left_shift(1, j) + 1]
        anc = self._tour_np[np.minimum(left, right)]
        return self._depth_np[vs] + self._depth_np[c] - 2 * self._depth_np[anc]

    def lca(self, a: int, b: int) -> int:
        fa, fb = self.first[a], self.first[b]
        if fa > fb:
            fa, fb = fb, fa
        width = fb - fa + 1
        j = int(self._log[width])
        left = self._table[j, fa]
        right = self._table[j, fb - (1 << j) + 1]
        return self._tour[min(left, right)]

    def vertex_distance(self, a: int, b: int):
        c = self.lca(a, b)
        return self.depth[a] + self.depth[b] - 2 * self.depth[c]

    def distance(self, p: TreePoint, q: TreePoint):
        """Distance between two points addressed on edges."""
        inst = self.inst
        if p.edge == q.edge:
            return abs(p.offset - q.offset)
        pu, pv, plen = inst.edges[p.edge]
        qu, qv, qlen = inst.edges[q.edge]
        best = None
        for a, da in ((pu, p.offset), (pv, plen - p.offset)):
            for b, db in ((qu, q.offset), (qv, qlen - q.offset)):
                cand = da + self.vertex_distance(a, b) + db
                if best is None or cand < best:
                    best = cand
        return best

    def point_vertex_distance(self, p: TreePoint, v: int):
        u, w, length = self.inst.edges[p.edge]
        return min(
            p.offset + self.vertex_distance(u, v),
            length - p.offset + self.vertex_distance(w, v),
        )

    def in_branch(self, p: TreePoint, c: int, b: int, eid: int) -> bool:
        """True iff p lies in the component of T minus c that contains b.

        b must be a neighbor of c and eid the id of edge (c, b).  A point
        at c itself is on no side; interior points of the edge count.
        """
        u, v, length = self.inst.edges[p.edge]
        if p.edge == eid:
            return p.offset > 0 if u == c else p.offset < length
        return self.point_vertex_distance(p, c) == (
            self.point_vertex_distance(p, b) + self.inst.edge_length(eid)
        )


def centroid(inst: ProblemInstance) -> int:
    """A centroid vertex: every component after removal has at most V//2 vertices.

    Smallest vertex id wins when several qualify.
    """
    nv = inst.vertex_count
    adj = inst.adjacency
    parent = [-1] * nv
    order = []
    stack = [0]
    seen = [False] * nv
    seen[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for _, w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    size = [1] * nv
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    half = nv // 2
    best = -1
    for v in range(nv):
        heaviest = nv - size[v]
        for _, w in adj[v]:
            if parent[w] == v and size[w] > heaviest:
                heaviest = size[w]
        if heaviest <= half:
            best = v
            break  # ids ascend, first hit is the minimum
    return best


def region_centroid(inst: ProblemInstance, region) -> int:
    """Centroid of the subtree induced by a connected vertex set.

    Ties break toward the smallest vertex id, matching centroid().
    """
    region = set(region)
    root = min(region)
    adj = inst.adjacency
    parent = {root: -1}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for _, w in adj[v]:
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
    best = None
    for v in sorted(region):
        heaviest = total - size[v]
        for _, w in adj[v]:
            if w in region and parent.get(w) == v and size[w] > heaviest:
                heaviest = size[w]
        if heaviest <= half:
            best = v
            break
    return best


def split_components(inst: ProblemInstance, x: int):
    """Vertex sets of the components of T minus x, one per incident edge.

    Returns a list of (edge id out of x, neighbor, set of vertices).
    """
    adj = inst.adjacency
    out = []
    for eid, nb in adj[x]:
        comp = {nb}
        stack = [nb]
        while stack:
            v = stack.pop()
            for e2, w in adj[v]:
                if w != x and w not in comp:
                    comp.add(w)
                    stack.append(w)
        out.append((eid, nb, comp))
    return out
