"""Exact two-center solver for uncertain points on an edge-weighted tree.

Each uncertain point is a finite distribution of locations on the tree.
``solve`` returns two centers minimizing the maximum weighted expected
distance, with every value kept as an exact rational.
"""
from .decision import cover_intervals, decide
from .generator import generate_random
from .instance import (InstanceFormatError, ProblemInstance, TreePoint,
                       UncertainPoint, build_instance, format_rational,
                       load_instance, parse_instance, parse_rational,
                       serialize_instance)
from .metrics import (all_weighted_median_values, expected_distance, median,
                      objective_phi)
from .one_center import one_center
from .optimizer import Solution, find_critical_edges, solve
from .oracle import oracle_decide, oracle_lambda_star
from .reduction import reduce_to_vertex_constrained
from .tree import DistanceIndex, centroid, region_centroid, split_components

__all__ = [
    "DistanceIndex",
    "all_weighted_median_values",
    "InstanceFormatError",
    "ProblemInstance",
    "Solution",
    "TreePoint",
    "UncertainPoint",
    "build_instance",
    "centroid",
    "cover_intervals",
    "decide",
    "expected_distance",
    "find_critical_edges",
    "format_rational",
    "generate_random",
    "load_instance",
    "median",
    "objective_phi",
    "one_center",
    "oracle_decide",
    "oracle_lambda_star",
    "parse_instance",
    "parse_rational",
    "reduce_to_vertex_constrained",
    "region_centroid",
    "serialize_instance",
    "solve",
    "split_components",
]
