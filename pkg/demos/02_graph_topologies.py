"""Graph topologies and homophily
=================================

Generate the four experiment topologies at the paper-scale parameters and
compare their structure.  The attribute-driven (MAG) graph puts agents in
belief silos: its average neighbor distance is an order of magnitude below
the random graph's.
"""

import numpy as np

from podsim import (
    GraphSpec,
    gen_ba,
    gen_er,
    gen_mag,
    gen_ws,
    generate,
    homophily,
    mag_affinity,
)

SEED = 1000

er = gen_er(500, 0.05, seed=SEED)
ws = gen_ws(500, 5, 0.5, seed=SEED)
ba = gen_ba(500, 3, seed=SEED)
mag = gen_mag(500, mag_affinity(), seed=SEED)

for name, g in (("ER", er), ("WS", ws), ("BA", ba), ("MAG", mag)):
    degrees = [g.degree(u) for u in range(g.n)]
    print(
        f"{name:4s} edges {g.edge_count:6d}  mean degree {np.mean(degrees):5.2f}  "
        f"max degree {max(degrees):3d}  per-edge homophily {homophily(g):5.3f}"
    )

# The affinity matrix behind the MAG silos: a sharp diagonal.
print("\nMAG affinity by belief distance:", [mag_affinity()[0, d] for d in range(7)])

# Means over ten seeds reproduce the reported homophily values (~2.30 vs ~0.31).
er_mean = np.mean([homophily(gen_er(500, 0.05, seed=s)) for s in range(10)])
mag_mean = np.mean([homophily(gen_mag(500, mag_affinity(), seed=s)) for s in range(10)])
print(f"\n10-seed per-edge homophily: ER {er_mean:.3f}  MAG {mag_mean:.3f}")

# Graphs round-trip through a plain-text format.
spec = GraphSpec(kind="ws", n=500, k=5, rho=0.5, seed=SEED)
text = generate(spec).to_text()
print(f"\nserialized WS graph: {len(text.splitlines())} lines, starts with:")
print("\n".join(text.splitlines()[:3]))
