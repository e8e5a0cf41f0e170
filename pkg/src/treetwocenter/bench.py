"""Wall-time scaling sweeps for the decision and optimization paths.

Bench instances use machine floats whose values are all small dyadic
rationals (denominators are powers of two, magnitudes far below 2^53),
so every sum, product, and comparison inside the solvers is still exact;
only the handful of division-derived navigation thresholds round, and
those never feed an equality test.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from .decision import decide
from .instance import ProblemInstance, build_instance, TreePoint
from .metrics import objective_phi
from .optimizer import solve
from .tree import DistanceIndex

DEFAULT_SIZES = (2_000, 8_000, 32_000, 128_000)
DECIDE_POINTS = 100          # uncertain points in decide sweeps; m = size / n
SOLVE_POINTS = 8             # kept small: solve carries n^2 candidate work


@dataclass(frozen=True)
class BenchRow:
    mode: str                # 'decide' | 'solve'
    shape: str               # 'caterpillar' | 'random'
    size: int                # m * n
    label: str               # which timed call variant
    seconds: float


def _dyadic_probs(m):
    """m probabilities, each a dyadic float, summing to exactly 1.0."""
    unit = 1 << (m.bit_length() + 2)
    base, rem = divmod(unit, m)
    return [(base + 1) / unit if j < rem else base / unit for j in range(m)]


def _edge_len(k):
    return (1 + (k * 7 + 3) % 16) / 8.0


def _locations(n, m, nv):
    """Vertex for location (i, j): interleaved so each point spreads out."""
    return [[(i + j * n) % nv for j in range(m)] for i in range(n)]


def build_caterpillar(size, n):
    """Spine-with-legs tree holding one location per vertex."""
    m = size // n
    nv = m * n
    spine = (nv + 1) // 2
    edges = []
    for v in range(1, spine):
        edges.append((v - 1, v, _edge_len(v)))
    for leaf in range(spine, nv):
        edges.append((leaf - spine, leaf, _edge_len(leaf)))
    return _assemble(n, m, nv, edges)


def build_random_tree(size, n, seed=0):
    m = size // n
    nv = m * n
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v, _edge_len(rng.randrange(1 << 20)))
             for v in range(1, nv)]
    return _assemble(n, m, nv, edges)


def _assemble(n, m, nv, edges):
    probs = _dyadic_probs(m)
    at = {}                     # vertex -> TreePoint (builders emit u < v)
    for k, (u, v, ln) in enumerate(edges):
        at.setdefault(u, TreePoint(k, 0.0))
        at.setdefault(v, TreePoint(k, ln))
    points = []
    for i, verts in enumerate(_locations(n, m, nv)):
        w = (4 + i % 13) / 8.0
        points.append((w, [(at[v], probs[j]) for j, v in enumerate(verts)]))
    return build_instance(nv, edges, points)


def _probe_lambdas(inst, idx):
    """A generous and a tight lambda from one heuristic center pair."""
    a = inst.vertex_point(0)
    b = inst.vertex_point(inst.vertex_count - 1)
    full = objective_phi(inst, a, b, idx)
    return [('full', full), ('half', full / 2)]


def decide_bench(sizes=DEFAULT_SIZES, repeats=3, seed=0):
    rows = []
    for size in sizes:
        for shape, inst in _bench_instances(size, DECIDE_POINTS, seed):
            idx = DistanceIndex(inst)
            lams = _probe_lambdas(inst, idx)
            for label, lam in lams:
                for _ in range(repeats):
                    t0 = time.perf_counter()
                    decide(inst, lam)
                    rows.append(BenchRow('decide', shape, size, label,
                                         time.perf_counter() - t0))
    return rows


def solve_bench(sizes=DEFAULT_SIZES, repeats=1, seed=0):
    rows = []
    for size in sizes:
        for shape, inst in _bench_instances(size, SOLVE_POINTS, seed):
            for _ in range(repeats):
                t0 = time.perf_counter()
                solve(inst)
                rows.append(BenchRow('solve', shape, size, 'solve',
                                     time.perf_counter() - t0))
    return rows


def _bench_instances(size, n, seed):
    yield 'caterpillar', build_caterpillar(size, n)
    yield 'random', build_random_tree(size, n, seed + size)


def fit_slope(rows):
    """Least-squares slope of log(median seconds) against log(size)."""
    by_size = {}
    for r in rows:
        by_size.setdefault(r.size, []).append(r.seconds)
    sizes = sorted(by_size)
    med = [float(np.median(by_size[s])) for s in sizes]
    return float(np.polyfit(np.log(sizes), np.log(med), 1)[0])


def rows_to_csv(rows):
    lines = ['size,seconds,mode,shape,label']
    for r in rows:
        lines.append(f'{r.size},{r.seconds:.6f},{r.mode},{r.shape},{r.label}')
    return '\n'.join(lines) + '\n'
