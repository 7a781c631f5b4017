# The triangle with k = 2: every algorithm on the smallest interesting graph.
from kecolor import GreedyState, Pipeline, vizing_color, discard_least_used
from kecolor.graph import DynamicGraph, UpdateEvent, INSERT, DELETE
from kecolor.oracles import solve_all

tri = [(0, 1), (1, 2), (0, 2)]
g = DynamicGraph.from_edges(3, tri)

res = solve_all(g, 2)
print("optimum colored edges p* =", res.p_star)   # only two edges fit in 2 colors
print("largest 2-matching s* =", res.s_star)      # but all three form a 2-matching
print("fractional optimum =", res.frac_opt)

# Greedy: the third edge finds no common free color
st = GreedyState(3, 2)
for e in tri:
    print("insert", e, "-> color", st.insert(*e))

# deleting a colored edge hands its color to a blocked neighbor
print("delete (0, 1) recolors", st.delete(0, 1))
print("coloring now", st.coloring.assignment)

# Vizing needs 3 colors on the triangle; dropping the least used one keeps 2 edges
f = vizing_color(g)
print("vizing palette", f.palette_size, "->", discard_least_used(f, 2).p, "edges kept with k = 2")

# the pipelines recolor from a k-matching
for variant in ("matcho", "matcha"):
    p = Pipeline(variant, 3, 2, 0.25, seed=0)
    for e in tri:
        p.apply(UpdateEvent(INSERT, e))
    p.recolor()
    print(variant, "colors", p.coloring.p, "of", p.last_matching_size, "matched edges")
