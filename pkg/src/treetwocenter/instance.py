"""Problem instances: a tree network with uncertain demand points.

An instance is an edge-weighted tree together with n uncertain points.
Uncertain point i has a weight w_i and m_i possible locations; location j
is a point on the tree that materializes with probability f_ij, and the
probabilities of one uncertain point sum to exactly 1.  All scalars are
exact rationals (fractions.Fraction) unless an instance is deliberately
built with floats for timing runs.

Points on the tree are addressed by (edge id, offset), where the offset is
the distance from the edge's lower-numbered endpoint.  A point sitting on
a vertex has many such addresses; the canonical one uses the smallest
incident edge id (and the matching extreme offset).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


class InstanceFormatError(ValueError):
    """Raised for malformed or inconsistent instance documents."""


def parse_rational(text) -> Fraction:
    """Parse "num/den" or "num" into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InstanceFormatError(f"rational must be a string like '3/4', got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceFormatError(f"bad rational literal {text!r}: {exc}") from None


def format_rational(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True, order=True)
class TreePoint:
    """A point on the tree: offset along edge `edge` from its lower-id endpoint.

    Ordering is lexicographic by (edge, offset), which is the tie-break
    order used throughout when several points are equally good.
    """

    edge: int
    offset: Fraction


@dataclass(frozen=True)
class UncertainPoint:
    weight: Fraction
    locations: tuple  # tuple of (TreePoint, Fraction probability)


@dataclass(frozen=True)
class ProblemInstance:
    vertex_count: int
    edges: tuple  # tuple of (u, v, length), u < v
    uncertain_points: tuple  # tuple of UncertainPoint

    # -- basic accessors ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.uncertain_points)

    def edge_length(self, eid: int):
        return self.edges[eid][2]

    def edge_ends(self, eid: int) -> tuple:
        u, v, _ = self.edges[eid]
        return u, v

    @cached_property
    def adjacency(self) -> tuple:
        """adjacency[v] = tuple of (edge id, neighbor), edge ids ascending."""
        adj: list = [[] for _ in range(self.vertex_count)]
        for eid, (u, v, _) in enumerate(self.edges):
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        return tuple(tuple(entries) for entries in adj)

    @cached_property
    def _min_incident_edge(self) -> tuple:
        out = []
        for v in range(self.vertex_count):
            entries = self.adjacency[v]
            out.append(min(e for e, _ in entries) if entries else -1)
        return tuple(out)

    # -- point helpers --------------------------------------------------

    def vertex_point(self, v: int) -> TreePoint:
        """Canonical TreePoint for vertex v (minimum incident edge id)."""
        eid = self._min_incident_edge[v]
        if eid < 0:
            raise ValueError(f"vertex {v} has no incident edge")
        u, w, length = self.edges[eid]
        return TreePoint(eid, Fraction(0) if v == u else length)

    def point_vertex(self, p: TreePoint):
        """The vertex a point sits on, or None if strictly interior."""
        u, v, length = self.edges[p.edge]
        if p.offset == 0:
            return u
        if p.offset == length:
            return v
        return None

    def canonical_point(self, p: TreePoint) -> TreePoint:
        v = self.point_vertex(p)
        return p if v is None else self.vertex_point(v)

    def points_equal(self, p: TreePoint, q: TreePoint) -> bool:
        return self.canonical_point(p) == self.canonical_point(q)

    def is_vertex_constrained(self) -> bool:
        """True when every location of every uncertain point is at a vertex."""
        return all(
            self.point_vertex(loc) is not None
            for pt in self.uncertain_points
            for loc, _ in pt.locations
        )

    # -- validation -----------------------------------------------------

    def validate(self) -> None:
        nv, ne = self.vertex_count, len(self.edges)
        if nv < 2:
            raise InstanceFormatError(f"need at least 2 vertices, got {nv}")
        if ne != nv - 1:
            raise InstanceFormatError(f"{nv} vertices need {nv - 1} edges, got {ne}")
        parent = list(range(nv))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for eid, (u, v, length) in enumerate(self.edges):
            if not (0 <= u < nv and 0 <= v < nv):
                raise InstanceFormatError(f"edge {eid} endpoints ({u}, {v}) out of range")
            if u == v:
                raise InstanceFormatError(f"edge {eid} is a self-loop at vertex {u}")
            if u > v:
                raise InstanceFormatError(f"edge {eid} endpoints must satisfy u < v, got ({u}, {v})")
            if length <= 0:
                raise InstanceFormatError(f"edge {eid} has non-positive length {length}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InstanceFormatError(f"edge {eid} ({u}, {v}) closes a cycle; not a tree")
            parent[ru] = rv
        # nv-1 edges and no cycle imply connectivity, no separate check needed

        for i, pt in enumerate(self.uncertain_points):
            if pt.weight < 0:
                raise InstanceFormatError(f"uncertain point {i} has negative weight {pt.weight}")
            if not pt.locations:
                raise InstanceFormatError(f"uncertain point {i} has no locations")
            total = Fraction(0)
            for j, (loc, prob) in enumerate(pt.locations):
                if not (0 <= loc.edge < ne):
                    raise InstanceFormatError(
                        f"uncertain point {i} location {j} references edge {loc.edge}"
                    )
                length = self.edge_length(loc.edge)
                if not (0 <= loc.offset <= length):
                    raise InstanceFormatError(
                        f"uncertain point {i} location {j} offset {loc.offset} "
                        f"outside [0, {length}]"
                    )
                if prob < 0:
                    raise InstanceFormatError(
                        f"uncertain point {i} location {j} has negative probability {prob}"
                    )
                total += prob
            if total != 1:
                raise InstanceFormatError(
                    f"uncertain point {i} probability sum is {total}, expected 1"
                )


# -- construction helpers ----------------------------------------------


def _normalize_edge(u, v, length):
    return (u, v, length) if u < v else (v, u, length)


def build_instance(vertex_count: int, edges: Iterable, points: Iterable) -> ProblemInstance:
    """Assemble an instance from plain data and canonicalize vertex locations.

    `edges` yields (u, v, length); `points` yields (weight, [(TreePoint, prob), ...]).
    """
    norm_edges = tuple(_normalize_edge(u, v, length) for u, v, length in edges)
    inst = ProblemInstance(vertex_count, norm_edges, ())
    ups = []
    for weight, locs in points:
        for p, _ in locs:
            if not (0 <= p.edge < len(norm_edges)):
                raise InstanceFormatError(
                    f"location references edge {p.edge}, have {len(norm_edges)} edges"
                )
        canon = tuple((inst.canonical_point(p), f) for p, f in locs)
        ups.append(UncertainPoint(weight, canon))
    inst = ProblemInstance(vertex_count, norm_edges, tuple(ups))
    inst.validate()
    return inst


# -- JSON round-trip ---------------------------------------------------


def parse_instance(text: str) -> ProblemInstance:
    """Parse the JSON instance format and validate it."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InstanceFormatError("top-level document must be an object")
    try:
        nv = doc["vertices"]
        raw_edges = doc["edges"]
        raw_points = doc["uncertain_points"]
    except KeyError as exc:
        raise InstanceFormatError(f"missing required key {exc}") from None
    if not isinstance(nv, int):
        raise InstanceFormatError(f"'vertices' must be an integer, got {nv!r}")
    edges = []
    for k, entry in enumerate(raw_edges):
        try:
            u, v, length = entry
        except (TypeError, ValueError):
            raise InstanceFormatError(f"edge {k} must be [u, v, length], got {entry!r}") from None
        edges.append((u, v, parse_rational(length)))
    points = []
    for i, entry in enumerate(raw_points):
        if not isinstance(entry, dict):
            raise InstanceFormatError(f"uncertain point {i} must be an object")
        try:
            weight = parse_rational(entry["weight"])
            raw_locs = entry["locations"]
        except KeyError as exc:
            raise InstanceFormatError(f"uncertain point {i} missing key {exc}") from None
        locs = []
        for j, loc in enumerate(raw_locs):
            try:
                p = TreePoint(loc["edge"], parse_rational(loc["offset"]))
                f = parse_rational(loc["prob"])
            except (KeyError, TypeError) as exc:
                raise InstanceFormatError(
                    f"uncertain point {i} location {j} malformed: {exc}"
                ) from None
            locs.append((p, f))
        points.append((weight, locs))
    try:
        return build_instance(nv, edges, points)
    except InstanceFormatError:
        raise
    except (IndexError, ValueError) as exc:
        raise InstanceFormatError(str(exc)) from None


def serialize_instance(inst: ProblemInstance) -> str:
    doc = {
        "vertices": inst.vertex_count,
        "edges": [[u, v, format_rational(length)] for u, v, length in inst.edges],
        "uncertain_points": [
            {
                "weight": format_rational(pt.weight),
                "locations": [
                    {
                        "edge": loc.edge,
                        "offset": format_rational(loc.offset),
                        "prob": format_rational(f),
                    }
                    for loc, f in pt.locations
                ],
            }
            for pt in inst.uncertain_points
        ],
    }
    return json.dumps(doc, indent=2)


def load_instance(path: str) -> ProblemInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())
