import random
from fractions import Fraction

from treetwocenter import (DistanceIndex, build_instance, expected_distance,
                           one_center)
from treetwocenter.oracle import oracle_candidate_points
from conftest import random_instance, random_tree_point


def g_value(inst, idx, mask, x):
    best = Fraction(0)
    for i, up in enumerate(inst.uncertain_points):
        if not mask[i]:
            continue
        v = up.weight * expected_distance(up, x, idx)
        if v > best:
            best = v
    return best


def full_mask(inst):
    return [1] * len(inst.uncertain_points)


def test_path3_center(path3):
    res = one_center(path3, full_mask(path3))
    assert res.center == path3.vertex_point(1)
    assert res.value == 1


def test_edge_unc_flat(edge_unc):
    res = one_center(edge_unc, full_mask(edge_unc))
    assert res.value == 1
    assert res.center == edge_unc.vertex_point(0)


def test_star3_masked(star3):
    res = one_center(star3, [0, 1, 1])
    assert res.center == star3.vertex_point(0)
    assert res.value == 1


def test_center_beats_random_points():
    rng = random.Random(4)
    for seed in range(25):
        inst = random_instance(seed)
        idx = DistanceIndex(inst)
        mask = full_mask(inst)
        res = one_center(inst, mask, idx)
        assert g_value(inst, idx, mask, res.center) == res.value
        for _ in range(40):
            x = random_tree_point(inst, rng)
            assert g_value(inst, idx, mask, x) >= res.value


def test_matches_candidate_enumeration():
    """The exhaustive candidate set can never find a better value."""
    for seed in range(30):
        inst = random_instance(seed)
        idx = DistanceIndex(inst)
        rng = random.Random(seed)
        n = len(inst.uncertain_points)
        mask = [rng.randint(0, 1) for _ in range(n)] if n > 1 else [1]
        if not any(mask):
            mask[0] = 1
        res = one_center(inst, mask, idx)
        brute = min(g_value(inst, idx, mask, c)
                    for c in oracle_candidate_points(inst, idx))
        assert res.value == brute


def test_masked_points_never_matter():
    for seed in range(12):
        inst = random_instance(seed)
        n = len(inst.uncertain_points)
        if n < 2:
            continue
        mask = [1] * n
        mask[0] = 0
        base = one_center(inst, mask)
        # raise the masked point's weight; nothing may change
        bumped = build_instance(
            inst.vertex_count, inst.edges,
            [((up.weight * 100 + 7) if i == 0 else up.weight,
              list(up.locations))
             for i, up in enumerate(inst.uncertain_points)])
        again = one_center(bumped, mask)
        assert (base.center, base.value) == (again.center, again.value)


def test_all_masked_zero():
    inst = random_instance(3)
    res = one_center(inst, [0] * len(inst.uncertain_points))
    assert res.value == 0
