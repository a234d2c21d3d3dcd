"""
Unbiased estimators of theta and the BLUE
=========================================

Any c with ``sum_i c_i / i = 1`` gives an unbiased estimator ``c . xi``.
Its variance is ``c Lambda(theta) c`` with ``Lambda`` assembled from the
phase-type covariance of the branch lengths. Minimising it under the
unbiasedness constraint gives the best linear unbiased estimator, which
depends on theta and tends to Watterson's estimator as theta goes to zero.
"""

import numpy as np

from phasesfs import blue_coefficients, classical_coefficients, estimator_variance, sfs_model
from phasesfs.estimators import ESTIMATORS

from _plotting import figure, save

n = 10
np.set_printoptions(precision=3, suppress=True, linewidth=120)

for theta in (1e-6, 1.0, 10.0):
    print(f"BLUE at theta={theta:g}:", blue_coefficients(sfs_model(n, theta)).c)
print("Watterson:       ", classical_coefficients("watterson", n).c)

thetas = np.geomspace(0.1, 10, 30)
variances = {name: [] for name in ESTIMATORS + ("BLUE",)}
for theta in thetas:
    sm = sfs_model(n, theta)
    for name in ESTIMATORS:
        variances[name].append(estimator_variance(sm, classical_coefficients(name, n)))
    variances["BLUE"].append(estimator_variance(sm, blue_coefficients(sm)))

for name, values in variances.items():
    print(f"{name:10s} Var at theta=0.1, 1, 10:", np.round(np.interp([0.1, 1, 10], thetas, values), 3))

plt = figure()
if plt is not None:
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4))
    i = np.arange(1, n)
    for name in ESTIMATORS:
        left.plot(i, classical_coefficients(name, n).c, "o-", label=name)
    left.plot(i, blue_coefficients(sfs_model(n, 1.0)).c, "k*-", label="BLUE (theta=1)")
    left.set_xlabel("i")
    left.legend()
    for name, values in variances.items():
        right.loglog(thetas, values, label=name)
    right.set_xlabel("theta")
    right.set_ylabel("variance")
    save(plt, fig, "estimators.png")
