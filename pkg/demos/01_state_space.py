"""
The block-counting process
==========================

A sample of n genes is followed back in time. Each lineage is labelled by
how many of the sampled genes descend from it, and the state records how
many lineages carry 1, 2, ..., n-1 descendants. Two lineages merge at rate
1, so the state space is the set of integer partitions of n (minus the
single-block partition, which is absorption).
"""

import numpy as np

from phasesfs import build_model, state_count

np.set_printoptions(linewidth=120)

# n = 4: four states, the rows of the state matrix A
model = build_model(4)
print("states (a_1, a_2, a_3):")
print(model.A.astype(int))
print("sub-intensity matrix T:")
print(model.T)
print("exit rates:", model.exit_rates)

# the chain always loses one lineage per jump, so in the canonical order T is
# upper triangular and the diagonal is -C(k, 2) with k lineages
k = model.A.sum(axis=1)
print("lineages per state:", k.astype(int), " -diag(T):", -np.diag(model.T))

# n = 5 adds two states with a tripleton or quadrupleton branch
print(build_model(5).A.astype(int))

# state-space growth follows the partition function
for n in (5, 10, 15, 20, 25, 30):
    print(f"n={n:2d}: {state_count(n):5d} states")
