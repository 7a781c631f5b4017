# Running every algorithm on one random stream and comparing with the optimum.
import io
import json

from kecolor.bench import ALGORITHMS, RunConfig, generate_events, replay

n, k = 9, 2
events = generate_events(n, 300, 0.4, seed=3, max_edges=14)
bip_events = generate_events(n, 300, 0.4, seed=3, max_edges=14, bipartite=True)

for algo in ALGORITHMS:
    out = io.StringIO()
    evs = bip_events if algo.endswith("bip") else events
    replay(RunConfig(algo=algo, k=k, oracle=True, timing=False), n, evs, out=out, check=True)
    recs = [json.loads(line) for line in out.getvalue().splitlines()]
    ratios = [r["ratio"] for r in recs if r["ratio"] is not None]
    recolors = sum(r["recolored"] for r in recs)
    print(f"{algo:11s} final p={recs[-1]['colored']:2d}  p*={recs[-1]['oracle_p_star']:2d}  "
          f"worst ratio {max(ratios):.3f}  recolors {recolors}")
