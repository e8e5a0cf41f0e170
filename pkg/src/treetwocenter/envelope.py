"""Upper envelopes of lines and exact convex minimization on an interval.

Lines are (slope, intercept) pairs; a convex piecewise-linear function is
represented by the support lines of its segments, so max over the list
recovers the function.  Everything is arithmetic-agnostic: Fractions give
exact results, floats are accepted for throughput runs.
"""
from __future__ import annotations


def envelope_value(lines, t):
    best = None
    for s, c in lines:
        v = s * t + c
        if best is None or v > best:
            best = v
    return best


def upper_hull(lines):
    """Lines forming the upper envelope, sorted by ascending slope."""
    if not lines:
        return []
    srt = sorted(lines)
    filt = []
    for s, c in srt:
        if filt and filt[-1][0] == s:
            filt[-1] = (s, c)  # sorted order keeps the larger intercept last
        else:
            filt.append((s, c))
    hull = []
    for s2, c2 in filt:
        while len(hull) >= 2:
            s0, c0 = hull[-2]
            s1, c1 = hull[-1]
            # middle line is redundant once the outer pair crosses first
            if (c0 - c2) * (s1 - s0) <= (c0 - c1) * (s2 - s0):
                hull.pop()
            else:
                break
        hull.append((s2, c2))
    return hull


def minimize_max_on_interval(lines, a, b):
    """Minimize max of the lines over [a, b].

    Returns (value, lo, hi): the minimum value and the full sub-interval of
    [a, b] attaining it (lo == hi unless the envelope is flat there).
    """
    hull = upper_hull(lines)
    zero = None
    last_neg = None
    first_pos = None
    for k, (s, _) in enumerate(hull):
        if s < 0:
            last_neg = k
        elif s > 0:
            if first_pos is None:
                first_pos = k
        else:
            zero = k

    def crossing(i, j):
        si, ci = hull[i]
        sj, cj = hull[j]
        return (ci - cj) / (sj - si)

    if zero is not None:
        lo = crossing(zero - 1, zero) if zero > 0 else None
        hi = crossing(zero, zero + 1) if zero + 1 < len(hull) else None
    elif last_neg is None:
        lo, hi = None, a  # nondecreasing: min at the left end
    elif first_pos is None:
        lo, hi = b, None  # nonincreasing: min at the right end
    else:
        t = crossing(last_neg, first_pos)
        lo = hi = t

    lo = a if lo is None else max(a, lo)
    hi = b if hi is None else min(b, hi)
    if lo > hi:
        # the unconstrained minimizer misses [a, b]; clamp to the near end
        lo = hi = (a if hi < a else b)
    value = envelope_value(lines, lo)
    return value, lo, hi


def sublevel_interval(lines, bound, a, b):
    """The interval {t in [a, b] : max of lines <= bound}, or None if empty."""
    lo, hi = a, b
    for s, c in lines:
        if s > 0:
            t = (bound - c) / s
            if t < hi:
                hi = t
        elif s < 0:
            t = (bound - c) / s
            if t > lo:
                lo = t
        elif c > bound:
            return None
    if lo > hi:
        return None
    return lo, hi
