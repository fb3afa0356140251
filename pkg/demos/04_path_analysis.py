"""Why topology barely matters for the stubborn kernel
=======================================================

A message reaches an agent only through a chain of believers, and the
chain's probability is the product of each member's adoption chance.  One
relay three levels away from the message caps the whole chain near zero;
relays within one level cost almost nothing.  Counting bounded-distance
paths across random graph draws explains the cross-topology stability.
"""

import numpy as np

from podsim import (
    DCC,
    INSTITUTION,
    GraphSpec,
    SimpleContagion,
    SocialGraph,
    TransmissionPath,
    believing_neighbors,
    disjoint_paths_greedy,
    max_probability_path,
    path_census,
    path_probability,
)

# Chain probabilities: three close relays vs. one distant relay.
close = TransmissionPath((INSTITUTION, 0, 1, 2), (6, 6, 5, 6))
broken = TransmissionPath((INSTITUTION, 0, 1, 2), (6, 6, 3, 6))
print("close-belief chain:", round(path_probability(close, 6, DCC), 3))
print("chain with one distant relay:", round(path_probability(broken, 6, DCC), 5))
print("flat-rule chain of 2:", path_probability(TransmissionPath(
    (INSTITUTION, 0, 1), (6, 2, 4)), 6, SimpleContagion(0.15)))

# Best feed into an agent, found by shortest-path search over -log(beta).
g = SocialGraph([6, 5, 4, 5, 0], [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
path, prob = max_probability_path(g, [0], 3, 6, DCC)
print("\nbest route to node 3:", path.nodes, "probability", round(prob, 3))
print("neighbors of 4 likely to relay (delta=0.5):",
      believing_neighbors(g, [0], 4, 6, DCC, delta=0.5))
print("disjoint feeds into 3:",
      [p.nodes for p in disjoint_paths_greedy(g, [0], 3, 6, DCC)])

# The census: fraction of graph draws with an all-close-relay path to a
# random target at each belief level.  Silos starve distant levels.
for kind, spec in (
    ("er", GraphSpec(kind="er", n=500, rho=0.05)),
    ("mag", GraphSpec(kind="mag", n=500)),
):
    row = path_census(spec, tau=1, msg_level=6, trials=30, seed=7)
    print(f"\n{kind} tau=1 proportions by target level:",
          [round(p, 2) for p in row.proportions])
