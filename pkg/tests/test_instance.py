import json
from fractions import Fraction

import pytest

from treetwocenter import (InstanceFormatError, TreePoint, build_instance,
                           format_rational, generate_random, parse_instance,
                           parse_rational, serialize_instance)
from conftest import random_instance

PATH3_DOC = json.dumps({
    "vertices": 3,
    "edges": [[0, 1, "1"], [1, 2, "1"]],
    "uncertain_points": [
        {"weight": "1", "locations": [{"edge": 0, "offset": "0", "prob": "1"}]},
        {"weight": "1", "locations": [{"edge": 1, "offset": "1", "prob": "1"}]},
    ],
})


def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("7") == Fraction(7)
    assert parse_rational("-2/6") == Fraction(-1, 3)
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(5)) == "5"
    with pytest.raises(InstanceFormatError):
        parse_rational("1/0")
    with pytest.raises(InstanceFormatError):
        parse_rational(0.5)


def test_parse_path3_document():
    inst = parse_instance(PATH3_DOC)
    assert inst.vertex_count == 3
    assert len(inst.uncertain_points) == 2
    assert all(len(p.locations) == 1 for p in inst.uncertain_points)


def test_probability_sum_rejected():
    doc = json.loads(PATH3_DOC)
    doc["uncertain_points"][0]["locations"] = [
        {"edge": 0, "offset": "0", "prob": "1/2"},
        {"edge": 1, "offset": "1", "prob": "1/4"},
    ]
    with pytest.raises(InstanceFormatError, match="probability sum"):
        parse_instance(json.dumps(doc))


def test_edge_count_rejected():
    doc = json.loads(PATH3_DOC)
    doc["edges"] = doc["edges"][:1]
    doc["uncertain_points"][1]["locations"][0]["edge"] = 0
    with pytest.raises(InstanceFormatError, match="edges"):
        parse_instance(json.dumps(doc))
    # a location pointing past the edge list is also a format error
    doc = json.loads(PATH3_DOC)
    doc["uncertain_points"][1]["locations"][0]["edge"] = 9
    with pytest.raises(InstanceFormatError, match="references edge"):
        parse_instance(json.dumps(doc))


def test_cycle_rejected():
    doc = json.loads(PATH3_DOC)
    doc["vertices"] = 3
    doc["edges"] = [[0, 1, "1"], [1, 2, "1"], [0, 2, "1"]]
    # 3 edges on 3 vertices already fails the count check
    with pytest.raises(InstanceFormatError):
        parse_instance(json.dumps(doc))
    doc["vertices"] = 4
    doc["edges"] = [[0, 1, "1"], [1, 2, "1"], [0, 2, "1"]]
    with pytest.raises(InstanceFormatError, match="not a tree"):
        parse_instance(json.dumps(doc))


def test_negative_weight_and_length_rejected():
    doc = json.loads(PATH3_DOC)
    doc["uncertain_points"][0]["weight"] = "-1"
    with pytest.raises(InstanceFormatError, match="negative weight"):
        parse_instance(json.dumps(doc))
    doc = json.loads(PATH3_DOC)
    doc["edges"][0][2] = "0"
    with pytest.raises(InstanceFormatError, match="non-positive length"):
        parse_instance(json.dumps(doc))


def test_zero_weight_accepted():
    inst = build_instance(
        3,
        [(0, 1, Fraction(1)), (1, 2, Fraction(1))],
        [(Fraction(0), [(TreePoint(0, Fraction(0)), Fraction(1))])])
    assert inst.uncertain_points[0].weight == 0


def test_roundtrip_exact():
    """serialize(parse(text)) parses back to an identical instance."""
    for seed in range(40):
        inst = random_instance(seed)
        again = parse_instance(serialize_instance(inst))
        assert again.vertex_count == inst.vertex_count
        assert again.edges == inst.edges
        assert again.uncertain_points == inst.uncertain_points


def test_canonical_vertex_representation():
    inst = parse_instance(PATH3_DOC)
    # v1 touches edges 0 and 1; canonical form uses the lower edge id
    p = inst.canonical_point(TreePoint(1, Fraction(0)))
    assert p == TreePoint(0, Fraction(1))
    assert inst.vertex_point(1) == p
    assert inst.points_equal(TreePoint(0, Fraction(1)), TreePoint(1, Fraction(0)))
    interior = TreePoint(0, Fraction(1, 2))
    assert inst.canonical_point(interior) == interior


def test_generator_deterministic():
    a = generate_random(7, 3, 2, 12, 16)
    b = generate_random(7, 3, 2, 12, 16)
    assert a.edges == b.edges and a.uncertain_points == b.uncertain_points
    c = generate_random(8, 3, 2, 12, 16)
    assert (a.edges != c.edges) or (a.uncertain_points != c.uncertain_points)


def test_generator_output_valid():
    for seed in range(60):
        inst = random_instance(seed)
        inst.validate()  # raises on any broken invariant
        assert inst.is_vertex_constrained()
        again = parse_instance(serialize_instance(inst))
        assert again.uncertain_points == inst.uncertain_points
