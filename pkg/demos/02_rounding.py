# Half-integral b-matchings and how they are rounded.
from fractions import Fraction

from kecolor.graph import DynamicGraph
from kecolor.polytope import (
    double_cover,
    euler_partition,
    half_integral_optimum,
    round_half_integral,
)

# odd cycles are where fractional and integral optima differ
c5 = DynamicGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
b = [1] * 5
x = half_integral_optimum(c5, b)
print("C5 optimum:", dict(x.items()), "(values are doubled)")
print("value", x.value)

# the optimum comes from a bipartite double cover, solved by augmenting paths
cover, b2, mapping = double_cover(c5, b)
print("double cover:", cover.n, "vertices,", cover.m, "edges")

r = round_half_integral(x, b, c5)
print("rounded:", sorted(r.support()), "value", r.value)
print("guaranteed at least", (1 - Fraction(1, 3)) * x.value)

# a less symmetric graph: two triangles joined by a path, b = 2 at one vertex
g = DynamicGraph.from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)])
b = [1, 1, 2, 1, 1, 1, 1]
x = half_integral_optimum(g, b)
print("\nhalf edges:", x.half_edges())
part = euler_partition((g.n, x.half_edges()))
print("euler partition of the half edges: trails", part.trails, "circuits", part.circuits)
r = round_half_integral(x, b, g)
print("value", x.value, "->", r.value)
