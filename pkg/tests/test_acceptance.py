"""Acceptance gate: one test and one printed verdict line per criterion.

The shared 300-instance corpus (n in [1,6], m in [1,3], at most 24
vertices, denominators at most 16) is generated once and reused; oracle
values are computed a single time per instance.
"""
import random
import time
from fractions import Fraction

import pytest

from treetwocenter import (DistanceIndex, decide, generate_random,
                           expected_distance, objective_phi,
                           oracle_lambda_star, solve, split_components)
from treetwocenter.bench import decide_bench, fit_slope, solve_bench
from treetwocenter.decision import (BaseCase, EarlyResult, cover_intervals,
                                    path_constrained_decide, shrink_round)
from treetwocenter.decision import _path_breakpoints, _point_on_breakpoints
from treetwocenter.working import WorkingTree
from conftest import (CRITERION_LINES, make_edge_unc, make_path3, make_spread,
                      make_star3, random_instance)

KNIFE = Fraction(1) - Fraction(1, 2 ** 40)
CORPUS_SIZE = 300


def report(num, desc, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    line = f"[{tag}] criterion {num}: {desc}"
    if detail:
        line += f" ({detail})"
    CRITERION_LINES.append(line)
    print(line, flush=True)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    rows = []
    for seed in range(CORPUS_SIZE):
        inst = random_instance(seed)
        idx = DistanceIndex(inst)
        lam, _, _ = oracle_lambda_star(inst, idx)
        rows.append((seed, inst, idx, lam))
    return rows


def test_criterion_1_solve_oracle_equivalence(corpus):
    t0 = time.time()
    bad = []
    for seed, inst, idx, lam in corpus:
        sol = solve(inst)
        if sol.lambda_star != lam:
            bad.append((seed, "lambda", sol.lambda_star, lam))
        elif objective_phi(inst, sol.center1, sol.center2, idx) != lam:
            bad.append((seed, "phi"))
    took = time.time() - t0
    report(1, "solve matches the oracle exactly on the 300-instance corpus",
           not bad and took < 300,
           f"{len(corpus) - len(bad)}/{len(corpus)} exact, {took:.1f}s"
           + (f"; first bad {bad[0]}" if bad else ""))


def test_criterion_2_decide_oracle_equivalence(corpus):
    bad = 0
    checked = 0
    for seed, inst, idx, lam in corpus:
        probes = {Fraction(0), lam / 2, lam, lam * Fraction(3, 2), lam * KNIFE}
        for probe in probes:
            checked += 1
            want = probe >= lam  # oracle_decide(inst, probe) by definition
            if decide(inst, probe, idx).feasible != want:
                bad += 1
    report(2, "decide matches oracle_decide on five lambdas per instance",
           bad == 0, f"{checked - bad}/{checked} verdicts agree")


def test_criterion_3_knife_edge(corpus):
    bad = 0
    positive = 0
    for seed, inst, idx, lam in corpus:
        if lam <= 0:
            continue
        positive += 1
        if not decide(inst, lam, idx).feasible:
            bad += 1
        elif decide(inst, lam * KNIFE, idx).feasible:
            bad += 1
    report(3, "feasibility flips exactly at lambda-star",
           bad == 0 and positive > 100,
           f"{positive} positive-lambda instances, {bad} violations")


def test_criterion_4_monotonicity(corpus):
    rng = random.Random(424242)
    pairs = 0
    bad = 0
    while pairs < 1000:
        seed, inst, idx, lam = corpus[rng.randrange(len(corpus))]
        span = lam * 2 + 1
        a = span * Fraction(rng.randint(0, 256), 256)
        b = span * Fraction(rng.randint(0, 256), 256)
        lam1, lam2 = (a, b) if a <= b else (b, a)
        pairs += 1
        if decide(inst, lam1, idx).feasible and not decide(inst, lam2, idx).feasible:
            bad += 1
    report(4, "no feasible-then-infeasible pair in 1000 random lambda pairs",
           bad == 0, f"{pairs} pairs, {bad} violations")


def test_criterion_5_fixture_values():
    want = [
        (make_path3(), Fraction(0)),
        (make_star3(), Fraction(1)),
        (make_edge_unc(), Fraction(1)),
        (make_spread(), Fraction(3, 4)),
    ]
    got = [solve(inst).lambda_star for inst, _ in want]
    ok = got == [w for _, w in want]
    report(5, "pinned fixture optima 0, 1, 1, 3/4", ok, f"got {got}")


def _centroid_halving_check():
    bad = 0
    for seed in range(200):
        rng = random.Random(900000 + seed)
        inst = generate_random(900000 + seed, rng.randint(1, 6),
                               rng.randint(1, 3), rng.randint(2, 64), 16)
        from treetwocenter import centroid
        c = centroid(inst)
        worst = max(len(comp) for _, _, comp in split_components(inst, c))
        if worst > inst.vertex_count // 2:
            bad += 1
    return bad


def _shrink_round_check():
    violations = 0
    rounds_seen = 0
    for seed in range(25):
        rng = random.Random(seed)
        inst = generate_random(777000 + seed, rng.randint(10, 16),
                               rng.randint(1, 3), rng.randint(40, 64), 16)
        idx = DistanceIndex(inst)
        probe = objective_phi(inst, inst.vertex_point(0),
                              inst.vertex_point(inst.vertex_count - 1), idx) / 2
        wt = WorkingTree.initial(inst, idx)
        while True:
            n_h = len(wt.active)
            if n_h <= 8 or wt.non_dummy_vertex_count() <= 8:
                break
            step = shrink_round(wt, probe, idx)
            if isinstance(step, (EarlyResult, BaseCase)):
                break
            rounds_seen += 1
            if n_h >= 4 and len(step.active) > n_h - n_h // 4:
                violations += 1
            wt = step
    return violations, rounds_seen


def _cover_membership_check(corpus):
    rng = random.Random(606060)
    bad = 0
    checked = 0
    for seed, inst, idx, lam in corpus[:50]:
        nv = inst.vertex_count
        a, b = rng.randrange(nv), rng.randrange(nv)
        probe = lam * Fraction(rng.randint(1, 4), 3)
        intervals = cover_intervals(inst, (a, b), probe, idx)
        bps = _path_breakpoints(inst, idx, inst.vertex_point(a),
                                inst.vertex_point(b))
        total = bps[-1][1]
        for _ in range(200):
            s = total * Fraction(rng.randint(0, 4096), 4096)
            x = _point_on_breakpoints(inst, bps, s)
            for up, iv in zip(inst.uncertain_points, intervals):
                checked += 1
                inside = (not iv.empty) and iv.lower <= s <= iv.upper
                covered = up.weight * expected_distance(up, x, idx) <= probe
                if inside != covered:
                    bad += 1
    return bad, checked


def test_criterion_6_structural_invariants(corpus):
    halving_bad = _centroid_halving_check()
    prune_bad, rounds_seen = _shrink_round_check()
    cover_bad, cover_checked = _cover_membership_check(corpus)
    ok = halving_bad == 0 and prune_bad == 0 and rounds_seen > 0 and cover_bad == 0
    report(6, "centroid halving, round contraction, interval membership", ok,
           f"200 trees halved, {rounds_seen} rounds all pruned >= n_h/4, "
           f"{cover_checked} membership checks, "
           f"{halving_bad + prune_bad + cover_bad} violations")


def test_criterion_7_piercing(corpus):
    rng = random.Random(313131)
    families = 0
    bad = 0
    while families < 500:
        seed, inst, idx, lam = corpus[rng.randrange(len(corpus))]
        nv = inst.vertex_count
        a, b = rng.randrange(nv), rng.randrange(nv)
        probe = (lam * 2 + 1) * Fraction(rng.randint(0, 64), 64)
        intervals = cover_intervals(inst, (a, b), probe, idx)
        verdict = path_constrained_decide(inst, (a, b), probe, idx).feasible
        if verdict != _brute_two_pierceable(intervals):
            bad += 1
        families += 1
    report(7, "path verdict equals brute-force two-pierceability",
           bad == 0, f"{families} interval families, {bad} mismatches")


def _brute_two_pierceable(intervals):
    if any(iv.lower is None for iv in intervals):
        return False
    stabs = sorted({end for iv in intervals for end in (iv.lower, iv.upper)})
    for x in stabs:
        for y in stabs:
            if all(iv.lower <= x <= iv.upper or iv.lower <= y <= iv.upper
                   for iv in intervals):
                return True
    return not intervals


def test_criterion_8_decide_scaling():
    t0 = time.time()
    rows = decide_bench()
    took = time.time() - t0
    slope = fit_slope(rows)
    report(8, "decide wall time scales with log-log slope <= 1.25",
           slope <= 1.25 and took < 120,
           f"slope {slope:.3f}, bench took {took:.0f}s")


def test_criterion_9_solve_scaling():
    rows = solve_bench()
    slope = fit_slope(rows)
    report(9, "solve wall time scales with log-log slope <= 1.45",
           slope <= 1.45, f"slope {slope:.3f}")
