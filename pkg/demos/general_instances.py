"""
Locations in the middle of an edge
==================================

Instances may place probability mass anywhere on the tree, not just at
vertices.  solve() first rewrites such an instance into vertex-constrained
form (new vertices split the host edges, location-free corridors contract)
and maps the answer back, so callers never see the rewritten tree.
"""
from fractions import Fraction

from treetwocenter import (TreePoint, build_instance,
                           reduce_to_vertex_constrained, solve)

# One long edge; both points live strictly inside it.
inst = build_instance(
    2, [(0, 1, Fraction(4))],
    [
        (Fraction(1), [(TreePoint(0, Fraction(1)), Fraction(1, 2)),
                       (TreePoint(0, Fraction(3)), Fraction(1, 2))]),
        (Fraction(2), [(TreePoint(0, Fraction(2)), Fraction(1))]),
    ])

core, mapping = reduce_to_vertex_constrained(inst)
print(f"original: {inst.vertex_count} vertices, {len(inst.edges)} edge(s)")
print(f"reduced : {core.vertex_count} vertices, {len(core.edges)} edge(s)")
for u, v, length in core.edges:
    print(f"  edge ({u}, {v}) length {length}")

sol = solve(inst)
print(f"\nlambda* = {sol.lambda_star}")
print(f"centers on the original edge at offsets "
      f"{sol.center1.offset} and {sol.center2.offset}")

# Round trip: a point pushed through the mapping and back lands where it
# started.
p = TreePoint(0, Fraction(5, 2))
assert mapping.backward(mapping.forward(p)) == p
