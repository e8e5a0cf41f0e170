import random
from fractions import Fraction

from treetwocenter import (DistanceIndex, TreePoint, all_weighted_median_values,
                           expected_distance, median, objective_phi)
from treetwocenter.metrics import form_on_edge
from conftest import random_instance, random_tree_point


def test_expected_distance_fixture_values(edge_unc, spread):
    idx = DistanceIndex(edge_unc)
    u = edge_unc.vertex_point(0)
    assert expected_distance(edge_unc.uncertain_points[0], u, idx) == Fraction(1, 2)
    idx = DistanceIndex(spread)
    v1 = spread.vertex_point(1)
    assert expected_distance(spread.uncertain_points[0], v1, idx) == Fraction(3, 4)
    # a deterministic point at its own location
    p2 = spread.uncertain_points[1]
    assert expected_distance(p2, p2.locations[0][0], idx) == 0


def test_form_fixture_values(edge_unc, spread):
    idx = DistanceIndex(spread)
    f = form_on_edge(spread, spread.uncertain_points[1], 3, idx)
    assert (f.base, f.slope) == (Fraction(1), Fraction(-1))
    f = form_on_edge(spread, spread.uncertain_points[0], 2, idx)
    assert (f.base, f.slope) == (Fraction(3, 4), Fraction(1))
    idx = DistanceIndex(edge_unc)
    f = form_on_edge(edge_unc, edge_unc.uncertain_points[0], 0, idx)
    assert (f.base, f.slope) == (Fraction(1), Fraction(0))


def test_form_endpoint_agreement():
    for seed in range(25):
        inst = random_instance(seed)
        idx = DistanceIndex(inst)
        for eid, (u, v, length) in enumerate(inst.edges):
            pu, pv = inst.vertex_point(u), inst.vertex_point(v)
            for up in inst.uncertain_points:
                f = form_on_edge(inst, up, eid, idx)
                assert f.value(0) == up.weight * expected_distance(up, pu, idx)
                assert f.value(length) == up.weight * expected_distance(up, pv, idx)


def test_convexity_along_edges():
    """Midpoint of any edge never exceeds the endpoint average."""
    rng = random.Random(2)
    for seed in range(20):
        inst = random_instance(seed)
        idx = DistanceIndex(inst)
        for _ in range(10):
            eid = rng.randrange(len(inst.edges))
            length = inst.edges[eid][2]
            a = TreePoint(eid, length * Fraction(rng.randint(0, 4), 8))
            b = TreePoint(eid, length * Fraction(rng.randint(4, 8), 8))
            mid = TreePoint(eid, (a.offset + b.offset) / 2)
            for up in inst.uncertain_points:
                ea = expected_distance(up, a, idx)
                eb = expected_distance(up, b, idx)
                em = expected_distance(up, mid, idx)
                assert 2 * em <= ea + eb


def test_median_deterministic(path3):
    idx = DistanceIndex(path3)
    res = median(path3.uncertain_points[0], path3, idx)
    assert res.point == path3.vertex_point(0)
    assert res.value == 0


def test_median_spread_fixture(spread):
    # median set is the segment [v1, v2]; canonical end v1, Ed there 3/4
    idx = DistanceIndex(spread)
    res = median(spread.uncertain_points[0], spread, idx)
    assert res.point == spread.vertex_point(1)
    assert res.value == Fraction(3, 4)
    covered = set()
    for eid, lo, hi in res.segments:
        assert lo <= hi
        covered.add((eid, lo, hi))
    assert (1, Fraction(0), Fraction(1)) in covered


def test_median_flat_edge(edge_unc):
    idx = DistanceIndex(edge_unc)
    res = median(edge_unc.uncertain_points[0], edge_unc, idx)
    assert res.point == edge_unc.vertex_point(0)
    assert res.value == Fraction(1, 2)
    assert res.segments == ((0, Fraction(0), Fraction(1)),)


def median_set_contains(inst, res, p):
    # try every edge representation of p (a vertex sits on all incident edges)
    reps = [p]
    v = inst.point_vertex(p)
    if v is not None:
        for eid, _ in inst.adjacency[v]:
            u, _, length = inst.edges[eid]
            reps.append(TreePoint(eid, Fraction(0) if v == u else length))
    return any(eid == q.edge and lo <= q.offset <= hi
               for eid, lo, hi in res.segments for q in reps)


def test_median_optimality_random():
    rng = random.Random(9)
    for seed in range(20):
        inst = random_instance(seed)
        idx = DistanceIndex(inst)
        for up in inst.uncertain_points:
            res = median(up, inst, idx)
            for _ in range(50):
                x = random_tree_point(inst, rng)
                ed = expected_distance(up, x, idx)
                assert ed >= res.value
                # equality exactly on the reported set
                assert (ed == res.value) == median_set_contains(inst, res, x)


def test_monotone_growth_away_from_median():
    rng = random.Random(14)
    for seed in range(15):
        inst = random_instance(seed)
        idx = DistanceIndex(inst)
        for up in inst.uncertain_points:
            res = median(up, inst, idx)
            for _ in range(20):
                p = random_tree_point(inst, rng)
                q = random_tree_point(inst, rng)
                dp = idx.distance(res.point, p)
                dq = idx.distance(res.point, q)
                a, b, da, db = (p, q, dp, dq) if dp <= dq else (q, p, dq, dp)
                if idx.distance(a, b) == db - da:
                    # a lies on the median-to-b path
                    assert expected_distance(up, a, idx) <= expected_distance(up, b, idx)


def test_phi_fixture_values(path3, star3):
    idx = DistanceIndex(path3)
    assert objective_phi(path3, path3.vertex_point(0), path3.vertex_point(2), idx) == 0
    v1 = path3.vertex_point(1)
    assert objective_phi(path3, v1, v1, idx) == 1
    idx = DistanceIndex(star3)
    assert objective_phi(star3, star3.vertex_point(1), star3.vertex_point(0), idx) == 1


def test_all_weighted_median_values():
    for seed in range(20):
        inst = random_instance(seed)
        idx = DistanceIndex(inst)
        vals = all_weighted_median_values(inst, idx)
        assert len(vals) == len(inst.uncertain_points)
        for up, got in zip(inst.uncertain_points, vals):
            assert got == up.weight * median(up, inst, idx).value
