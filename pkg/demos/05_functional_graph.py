"""The functional graph of r over F_{p^2} and the depth of its trees.

    python demos/05_functional_graph.py [fixture-name]
"""

import sys

from ecirr.ff import FieldCtx
from ecirr.graph import build_graph, common_depth, summary, trajectory, tree_profiles
from ecirr.quadorder import frobenius_from_trace, nu_alpha
from ecirr.curve import count_points

from _data import fixture

name = sys.argv[1] if len(sys.argv) > 1 else "d2_l3_p59"
curve, m, alpha, d, k0 = fixture(name)
p = curve.ctx.p
field = FieldCtx.extension(p, 2 * d)
g = build_graph(m, field)
s = summary(g, d)
print(f"{name}: degree-{m.l} map over F_{p}, graph on P^1(F_{p}^{2 * d}) with {s['nodes']} nodes")
print(f"  {s['cycles']} cycles, {s['weak_components']} weakly connected components")

prof = tree_profiles(g, d)
print(f"  {len(prof)} cycle vertices lie in P^1(F_{p}^{d}); their trees have depths {s['subfield_depths']}")
print(f"  every leaf at full depth: {s['subfield_uniform']}; common depth {common_depth(prof)}")

data = count_points(curve)
for pi in frobenius_from_trace(alpha.order, data.trace, data.q):
    print(f"  nu_alpha(pi^{2 * d} - 1) for pi = {pi}: {nu_alpha(pi ** (2 * d) - 1, alpha)[0]}")

leaf = next(p for p in prof if p.leaf_heights)
node = next(int(v) for v in range(g.size) if g.in_degree()[v] == 0 and g.root[v] == g.node_of(leaf.root))
tail, cyc = trajectory(g, g.point_of(node))
print(f"\nA leaf's orbit: tail of {len(tail)} steps {tail} then a cycle of length {len(cyc)}")
