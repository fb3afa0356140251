"""Adoption-probability kernels
===============================

Walk through the three contagion families and the distance kernels that
drive cognitive contagion.  The stubborn sigmoid is the headline: it is
near-certain within one belief step, a coin flip at two, and almost
impossible beyond three, which is what makes whole chains of distant
believers collapse.
"""

import numpy as np

from podsim import (
    DCC,
    ComplexContagion,
    SimpleContagion,
    beta_table,
    beta_table_csv,
    contagion_prob,
    min_infected_neighbors,
)
from podsim.contagion import LINEAR_PRESETS, SIGMOID_PRESETS, THRESHOLD_PRESETS

# Simple contagion ignores beliefs entirely: a flat coin per contact.
simple = SimpleContagion(p=0.15)
print("simple, any beliefs:", contagion_prob(simple, 0, 6))

# With independent per-neighbor trials, how many believing neighbors make
# adoption near-certain?
print("neighbors needed at p=0.5 for 95% adoption:", min_infected_neighbors(0.5, 0.95))
print("neighbors needed at p=0.15 for 95% adoption:", min_infected_neighbors(0.15, 0.95))

# Complex contagion is a hard neighborhood-ratio switch.
complex_rule = ComplexContagion(alpha=0.35)
print("complex at 2/5 believing neighbors:", contagion_prob(complex_rule, 3, 6, 2 / 5))
print("complex at 1/5 believing neighbors:", contagion_prob(complex_rule, 3, 6, 1 / 5))

# Cognitive kernels by family and temperament.
for family, presets in (
    ("linear", LINEAR_PRESETS),
    ("threshold", THRESHOLD_PRESETS),
    ("sigmoid", SIGMOID_PRESETS),
):
    for temperament, model in presets.items():
        row = [round(contagion_prob(model, 6, b), 3) for b in range(7)]
        print(f"{family:9s} {temperament:8s} beta(6, .) = {row}")

# The defensive (stubborn sigmoid) kernel's full 7x7 table.
np.set_printoptions(precision=3, suppress=True)
print("\nstubborn sigmoid adoption table:")
print(beta_table(DCC))
print("\nCSV export (3-decimal fixed point):")
print(beta_table_csv(DCC))
