"""Seeded random instances for tests and the CLI gen subcommand."""
from __future__ import annotations

import random
from fractions import Fraction

from .instance import ProblemInstance, build_instance


def generate_random(seed: int, n: int, m: int, vertex_budget: int,
                    denominator_bound: int = 16) -> ProblemInstance:
    """Deterministic random vertex-constrained instance.

    Tree shape by random attachment, then a label shuffle.  Lengths and
    weights are rationals with numerator and denominator drawn up to the
    bound; location probabilities are a_j / sum(a), so the normalized
    denominator can exceed the bound.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if vertex_budget < 2:
        raise ValueError("vertex_budget must be at least 2")
    rng = random.Random(seed)
    nv = rng.randint(2, vertex_budget)

    labels = list(range(nv))
    rng.shuffle(labels)
    edges = []
    for k in range(1, nv):
        par = rng.randrange(k)
        length = Fraction(rng.randint(1, denominator_bound),
                          rng.randint(1, denominator_bound))
        edges.append((labels[par], labels[k], length))

    skeleton = build_instance(nv, edges, [])
    points = []
    for _ in range(n):
        weight = Fraction(rng.randint(1, denominator_bound),
                          rng.randint(1, denominator_bound))
        raw = [rng.randint(1, denominator_bound) for _ in range(m)]
        total = sum(raw)
        locs = [
            (skeleton.vertex_point(rng.randrange(nv)), Fraction(a, total))
            for a in raw
        ]
        points.append((weight, locs))
    return build_instance(nv, edges, points)
