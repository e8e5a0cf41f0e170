import math

from treetwocenter.bench import (BenchRow, _dyadic_probs, build_caterpillar,
                                 build_random_tree, fit_slope, rows_to_csv)


def test_dyadic_probs_sum_exactly_one():
    for m in range(1, 40):
        probs = _dyadic_probs(m)
        assert len(probs) == m
        assert sum(probs) == 1.0  # exact in binary floating point
        assert all(p > 0 for p in probs)


def test_caterpillar_shape():
    inst = build_caterpillar(2000, 100)
    assert inst.vertex_count == 2000 // 100 * 100
    assert len(inst.edges) == inst.vertex_count - 1
    assert len(inst.uncertain_points) == 100
    assert all(len(up.locations) == 20 for up in inst.uncertain_points)
    # probabilities stay exactly normalized
    for up in inst.uncertain_points:
        assert sum(f for _, f in up.locations) == 1.0


def test_random_tree_shape():
    inst = build_random_tree(2000, 100, seed=5)
    assert inst.vertex_count == 2000 // 100 * 100
    assert len(inst.edges) == inst.vertex_count - 1
    again = build_random_tree(2000, 100, seed=5)
    assert again.edges == inst.edges


def test_locations_cover_all_vertices():
    inst = build_caterpillar(2000, 100)
    seen = set()
    for up in inst.uncertain_points:
        for loc, _ in up.locations:
            seen.add(inst.point_vertex(loc))
    assert seen == set(range(inst.vertex_count))


def test_fit_slope_recovers_exponent():
    rows = [BenchRow('decide', 'cat', s, 'half', 3.5e-7 * s ** 1.17)
            for s in (2000, 8000, 32000, 128000)]
    got = fit_slope(rows)
    assert math.isclose(got, 1.17, rel_tol=1e-6)


def test_rows_to_csv_layout():
    rows = [BenchRow('decide', 'cat', 2000, 'half', 0.25)]
    text = rows_to_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0] == 'size,seconds,mode,shape,label'
    assert lines[1].startswith('2000,0.25')
