"""
Integer-weighted statistics as discrete phase-type laws
=======================================================

For nonnegative integer coefficients c, the statistic ``c . xi`` is the
absorption time (minus one) of a discrete chain: every block-counting state
becomes a countdown block, and a mutation on an i-ton branch enters the
block so that exactly ``c_i`` steps pass before the next mutation can
happen. Scaled to integers, the pairwise, H and L estimators for n = 4 use
c = (3,4,3), (1,4,9) and (1,2,3).
"""

import numpy as np

from phasesfs import build_intweight_law, classical_coefficients, sfs_model
from phasesfs.estimators import integer_coefficients
from phasesfs.intweight import support_scan

from _plotting import figure, save

np.set_printoptions(linewidth=140, precision=3, suppress=True)
sm = sfs_model(4, theta=1.0)

law = build_intweight_law(sm, [1, 2, 3])
print("block sizes for c=(1,2,3):", law.block_sizes)
print(law.Mtilde)

# which values can 6 * theta_pi actually take?
pairwise = build_intweight_law(sm, [3, 4, 3])
print("impossible values of 3 xi_1 + 4 xi_2 + 3 xi_3 below 13:", sorted(set(range(13)) - support_scan(pairwise, 12)))

sm6 = sfs_model(6, theta=1.0)
c6 = integer_coefficients(classical_coefficients("pairwise", 6))
print("n=6 pairwise weights", c6, "gaps:", sorted(set(range(30)) - support_scan(build_intweight_law(sm6, c6), 29)))

plt = figure()
if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    for ax, model in zip(axes, (sm, sm6)):
        for name in ("pairwise", "H", "L"):
            w = classical_coefficients(name, model.n)
            c = integer_coefficients(w)
            scale = float(c[0] / w.c[0])
            probs = build_intweight_law(model, c).pmf(int(12 * scale))
            ax.plot(np.arange(probs.size) / scale, probs, ".", label=name)
        ax.set_title(f"n={model.n}")
        ax.set_xlabel("estimate of theta")
        ax.legend()
    save(plt, fig, "integer_weights.png")
