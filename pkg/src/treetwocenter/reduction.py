"""Reduction of general instances to the vertex-constrained form.

Interior locations become new vertices splitting their edge; location-free
degree-2 vertices are contracted so maximal location-free corridors merge
into single edges.  Distances between mapped points are preserved, so Ed
and the objective are unchanged under the mapping.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .instance import ProblemInstance, TreePoint, build_instance


@dataclass(frozen=True)
class PointMapping:
    """Bidirectional TreePoint translation between original and reduced."""

    original: ProblemInstance
    reduced: ProblemInstance
    _edge_chain: tuple      # original eid -> (chain, s_start, forward?)
    _chain_segments: tuple  # chain -> sorted (s_lo, s_hi, new_eid, u_at_lo)
    _chain_pieces: tuple    # chain -> sorted (s_lo, s_hi, orig_eid, forward?)
    _new_edge_pos: tuple    # new eid -> (chain, s_lo, s_hi, u_at_lo)

    def forward(self, p: TreePoint) -> TreePoint:
        chain, start, fwd = self._edge_chain[p.edge]
        length = self.original.edge_length(p.edge)
        s = start + (p.offset if fwd else length - p.offset)
        segs = self._chain_segments[chain]
        k = bisect_right([seg[0] for seg in segs], s) - 1
        k = max(0, min(k, len(segs) - 1))
        s_lo, s_hi, eid, u_at_lo = segs[k]
        off = s - s_lo if u_at_lo else s_hi - s
        return self.reduced.canonical_point(TreePoint(eid, off))

    def backward(self, q: TreePoint) -> TreePoint:
        chain, s_lo, s_hi, u_at_lo = self._new_edge_pos[q.edge]
        s = s_lo + q.offset if u_at_lo else s_hi - q.offset
        pieces = self._chain_pieces[chain]
        k = bisect_right([pc[0] for pc in pieces], s) - 1
        k = max(0, min(k, len(pieces) - 1))
        p_lo, p_hi, eid, fwd = pieces[k]
        off = s - p_lo if fwd else p_hi - s
        return self.original.canonical_point(TreePoint(eid, off))


def _identity_mapping(inst: ProblemInstance) -> PointMapping:
    edge_chain = []
    segments = []
    pieces = []
    new_pos = []
    for eid, (u, v, length) in enumerate(inst.edges):
        edge_chain.append((eid, Fraction(0), True))
        segments.append(((Fraction(0), length, eid, True),))
        pieces.append(((Fraction(0), length, eid, True),))
        new_pos.append((eid, Fraction(0), length, True))
    return PointMapping(inst, inst, tuple(edge_chain), tuple(segments),
                        tuple(pieces), tuple(new_pos))


def _already_reduced(inst: ProblemInstance) -> bool:
    """No interior locations and no contractible corridor vertex."""
    if not inst.is_vertex_constrained():
        return False
    has_loc = [False] * inst.vertex_count
    for up in inst.uncertain_points:
        for loc, _ in up.locations:
            has_loc[inst.point_vertex(loc)] = True
    return all(
        has_loc[v] or len(inst.adjacency[v]) != 2
        for v in range(inst.vertex_count)
    )


def reduce_to_vertex_constrained(inst: ProblemInstance):
    """(reduced instance, PointMapping).  Inputs already in reduced shape
    pass through unchanged with an identity mapping.
    """
    if _already_reduced(inst):
        return inst, _identity_mapping(inst)

    adj = inst.adjacency
    has_loc = [False] * inst.vertex_count
    interior = [set() for _ in inst.edges]  # interior location offsets per edge
    for up in inst.uncertain_points:
        for loc, _ in up.locations:
            v = inst.point_vertex(loc)
            if v is None:
                interior[loc.edge].add(loc.offset)
            else:
                has_loc[v] = True

    keep = [len(adj[v]) != 2 or has_loc[v] for v in range(inst.vertex_count)]
    new_id = {}
    for v in range(inst.vertex_count):
        if keep[v]:
            new_id[v] = len(new_id)

    chains = []           # (start kept vertex, end kept vertex, pieces)
    edge_chain = [None] * len(inst.edges)
    for a in range(inst.vertex_count):
        if not keep[a]:
            continue
        for eid0, b0 in adj[a]:
            if edge_chain[eid0] is not None:
                continue
            pieces = []
            s = Fraction(0)
            cur, eid, nxt = a, eid0, b0
            while True:
                u, v, length = inst.edges[eid]
                fwd = cur == u
                edge_chain[eid] = (len(chains), s, fwd)
                pieces.append((s, s + length, eid, fwd))
                s += length
                if keep[nxt]:
                    break
                (e1, w1), (e2, w2) = adj[nxt]
                cur = nxt
                eid, nxt = (e2, w2) if e1 == eid else (e1, w1)
            chains.append((a, nxt, pieces))

    # cut every chain at its interior location coordinates
    new_edges = []
    chain_segments = []
    new_edge_pos = []
    next_vertex = len(new_id)
    for chain_id, (a, b, pieces) in enumerate(chains):
        cuts = set()
        for s_lo, s_hi, eid, fwd in pieces:
            length = s_hi - s_lo
            for off in interior[eid]:
                cuts.add(s_lo + (off if fwd else length - off))
        stops = [Fraction(0)] + sorted(cuts) + [pieces[-1][1]]
        nodes = [new_id[a]]
        for _ in range(len(stops) - 2):
            nodes.append(next_vertex)
            next_vertex += 1
        nodes.append(new_id[b])
        segs = []
        for k in range(len(stops) - 1):
            eid_new = len(new_edges)
            x, y = nodes[k], nodes[k + 1]
            new_edges.append((x, y, stops[k + 1] - stops[k]))
            u_at_lo = min(x, y) == x
            segs.append((stops[k], stops[k + 1], eid_new, u_at_lo))
            new_edge_pos.append((chain_id, stops[k], stops[k + 1], u_at_lo))
        chain_segments.append(tuple(segs))

    skeleton = build_instance(next_vertex, new_edges, [])
    mapping = PointMapping(
        inst,
        skeleton,
        tuple(edge_chain),
        tuple(chain_segments),
        tuple(tuple(ch) for ch in (p for _, _, p in chains)),
        tuple(new_edge_pos),
    )
    points = []
    for up in inst.uncertain_points:
        locs = [(mapping.forward(loc), f) for loc, f in up.locations]
        points.append((up.weight, locs))
    reduced = build_instance(next_vertex, new_edges, points)
    mapping = PointMapping(inst, reduced, mapping._edge_chain,
                           mapping._chain_segments, mapping._chain_pieces,
                           mapping._new_edge_pos)
    return reduced, mapping
