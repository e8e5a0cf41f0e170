import random
from fractions import Fraction

from treetwocenter import (DistanceIndex, TreePoint, build_instance,
                           expected_distance, reduce_to_vertex_constrained)
from conftest import random_instance, random_tree_point


def make_interior_instance(seed):
    """Random instance, then push some locations into edge interiors."""
    inst = random_instance(seed)
    rng = random.Random(seed + 1000)
    points = []
    for up in inst.uncertain_points:
        locs = []
        for loc, prob in up.locations:
            if rng.random() < 0.5:
                eid = rng.randrange(len(inst.edges))
                length = inst.edges[eid][2]
                den = rng.randint(2, 6)
                loc = TreePoint(eid, length * Fraction(rng.randint(1, den - 1), den))
            locs.append((loc, prob))
        points.append((up.weight, locs))
    return build_instance(inst.vertex_count, inst.edges, points)


def test_single_edge_split():
    inst = build_instance(
        2, [(0, 1, Fraction(2))],
        [(Fraction(1), [(TreePoint(0, Fraction(1)), Fraction(1))])])
    core, mapping = reduce_to_vertex_constrained(inst)
    assert core.vertex_count == 3
    assert sorted(length for _, _, length in core.edges) == [1, 1]
    assert core.is_vertex_constrained()
    # the location landed on the new middle vertex
    loc = core.uncertain_points[0].locations[0][0]
    assert core.point_vertex(loc) is not None
    assert mapping.backward(loc) == TreePoint(0, Fraction(1))


def test_identity_passthrough(star3):
    # hub is location-free but degree 3: nothing to contract
    core, mapping = reduce_to_vertex_constrained(star3)
    assert core is star3
    p = TreePoint(1, Fraction(1, 3))
    assert mapping.forward(p) == p
    assert mapping.backward(p) == p


def test_path3_corridor_contracts(path3):
    # the middle vertex holds no location, so the path folds to one edge
    core, mapping = reduce_to_vertex_constrained(path3)
    assert core.vertex_count == 2
    assert core.edges == ((0, 1, Fraction(2)),)
    ends = {mapping.backward(core.vertex_point(0)),
            mapping.backward(core.vertex_point(1))}
    assert ends == {path3.vertex_point(0), path3.vertex_point(2)}


def test_degree2_contraction():
    # v1 holds no location and has degree 2: contracted away
    inst = build_instance(
        3, [(0, 1, Fraction(1)), (1, 2, Fraction(2))],
        [(Fraction(1), [(TreePoint(0, Fraction(0)), Fraction(1))]),
         (Fraction(1), [(TreePoint(1, Fraction(2)), Fraction(1))])])
    core, mapping = reduce_to_vertex_constrained(inst)
    assert core.vertex_count == 2
    assert core.edges[0][2] == 3
    # endpoints map across the contraction at matching distances
    idx_core = DistanceIndex(core)
    a = mapping.forward(TreePoint(0, Fraction(0)))
    b = mapping.forward(TreePoint(1, Fraction(2)))
    assert idx_core.distance(a, b) == 3


def test_mapping_preserves_distances_and_ed():
    for seed in range(20):
        inst = make_interior_instance(seed)
        core, mapping = reduce_to_vertex_constrained(inst)
        assert core.is_vertex_constrained()
        idx = DistanceIndex(inst)
        idx_core = DistanceIndex(core)
        rng = random.Random(seed)
        pts = [random_tree_point(inst, rng) for _ in range(10)]
        fwd = [mapping.forward(p) for p in pts]
        for a, fa in zip(pts, fwd):
            for b, fb in zip(pts, fwd):
                assert idx.distance(a, b) == idx_core.distance(fa, fb)
        # Ed agrees point-by-point under the mapping
        for up, up_core in zip(inst.uncertain_points, core.uncertain_points):
            assert up.weight == up_core.weight
            for p, fp in zip(pts, fwd):
                assert (expected_distance(up, p, idx)
                        == expected_distance(up_core, fp, idx_core))


def test_roundtrip_forward_backward():
    rng = random.Random(77)
    for seed in range(20):
        inst = make_interior_instance(seed)
        core, mapping = reduce_to_vertex_constrained(inst)
        idx = DistanceIndex(inst)
        for _ in range(10):
            p = random_tree_point(inst, rng)
            back = mapping.backward(mapping.forward(p))
            assert idx.distance(p, back) == 0
        idx_core = DistanceIndex(core)
        for _ in range(10):
            q = random_tree_point(core, rng)
            fwd = mapping.forward(mapping.backward(q))
            assert idx_core.distance(q, fwd) == 0
