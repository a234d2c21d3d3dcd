"""
How much does the BLUE gain?
============================

With n = 10 and theta = 10, compare the CDF of the BLUE with those of
Watterson's and the pairwise estimator. All three are centred on theta;
the BLUE is the most concentrated.
"""

import numpy as np

from phasesfs import blue_coefficients, classical_coefficients, invert_cdf, quantiles, sfs_model

from _plotting import figure, save

sm = sfs_model(10, theta=10.0)
stats = {
    "BLUE": blue_coefficients(sm).c,
    "Watterson": classical_coefficients("watterson", 10).c,
    "pairwise": classical_coefficients("pairwise", 10).c,
}
tables = {name: invert_cdf(sm, c) for name, c in stats.items()}
for name, table in tables.items():
    lo, hi = quantiles(table, [0.025, 0.975])
    print(f"{name:10s} mean {table.mu:.3f}  95% interval [{lo:.2f}, {hi:.2f}]  width {hi - lo:.2f}")

plt = figure()
if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
    for ax, other in zip(axes, ("Watterson", "pairwise")):
        for name, colour in (("BLUE", "k"), (other, "tab:red")):
            t = tables[name]
            keep = (t.x > -5) & (t.x < 40)
            ax.plot(t.x[keep], t.values[keep], colour, label=name)
        ax.legend()
        ax.set_xlabel("estimate of theta")
    save(plt, fig, "blue_cdf.png")
