"""
i-ton branch lengths and mutation counts
========================================

The total length of branches subtending i sampled genes is a phase-type
variable obtained from the block-counting chain with reward ``a_i`` in each
state. For n = 5 the tripleton and quadrupleton lengths can be exactly zero
(the tree may never contain such a branch), which shows up as a defect.
Sprinkling mutations at rate theta/2 turns each length into a discrete
phase-type count.
"""

import numpy as np

from phasesfs import sfs_model, iton_branch_law, iton_count_law
from phasesfs.phasetype import ph_density, pmf_table

from _plotting import figure, save

sm = sfs_model(5, theta=1.0)

for i in range(1, 5):
    ph = iton_branch_law(sm, i)
    print(f"i={i}: P(Y_i = 0) = {ph.defect:.4f}, E[Y_i] = {ph.mean():.4f} (2/i = {2 / i:.4f})")

# densities of the absolutely continuous parts and pmfs of the counts
t = np.linspace(0.01, 6, 300)
dens = {i: ph_density(iton_branch_law(sm, i), t) for i in range(1, 5)}
probs = {i: pmf_table(iton_count_law(sm, i), 8) for i in range(1, 5)}
for i in range(1, 5):
    print(f"xi_{i}:", np.round(probs[i], 4))

plt = figure()
if plt is not None:
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    for i in range(1, 5):
        left.plot(t, dens[i], label=f"{i}-ton")
        right.plot(np.arange(9), probs[i], "o-", label=f"$\\xi_{i}$")
    left.set_xlabel("branch length")
    right.set_xlabel("number of mutations")
    left.legend()
    right.legend()
    save(plt, fig, "branch_lengths.png")
