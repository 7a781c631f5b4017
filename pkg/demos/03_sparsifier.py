# Sparsifying a fractional k-matching by sampling color classes.
import math
import random
from collections import Counter

from kecolor.sparsifier import Sparsifier, default_d

n, k, eps = 30, 2, 0.25
d = default_d(k, eps)
print("d =", round(d, 2), " buckets =", Sparsifier(n, k, eps).ell)

rng = random.Random(1)
sp = Sparsifier(n, k, eps, seed=1)
load = [0.0] * n
for _ in range(1500):
    u, v = rng.sample(range(n), 2)
    e = (min(u, v), max(u, v))
    x = rng.choice([1.0, 0.5, 0.05, 0.01, 0.003, 0.0005])
    if e in sp.x or load[u] + x > k or load[v] + x > k:
        continue
    load[u] += x
    load[v] += x
    sp.apply_value_change(e, 0, x)

for b in sp.buckets[1:]:
    if b.color:
        mode = "kept" if d >= (1 + eps) ** (b.index - 1) else "sampled"
        print(f"bucket {b.index:2d}: {len(b.color):3d} edges, palette {b.palette:4d}, {mode}")

# inclusion frequency of a light edge against min(1, x d)
trials = 5000
hits = Counter()
for _ in range(trials):
    hits.update(sp.request(d))
light = min(sp.where, key=lambda e: sp.x[e])
x = sp.x[light]
print("lightest bucketed edge x =", x, " frequency", hits[light] / trials, " x d =", round(x * d, 4))
print("mass kept in buckets", round(sp.retained_mass(), 3), "of", round(sp.total_mass(), 3))
print("typical |H| =", sp.last_request_size, "of", len(sp.where))
