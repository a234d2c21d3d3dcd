"""
Multivariate phase-type (MPH*) rewards and their Poisson-mutated counts.

``Y_j = int_0^tau R[X_t, j] dt`` for the columns ``j`` of a reward matrix
``R``; given ``Y`` the counts ``Z_j ~ Poisson(lam Y_j)`` are independent.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .phasetype import ContPhaseType, DiscPhaseType, poisson_mix, reward_transform


@dataclass(frozen=True, eq=False)
class MphRep:
    """``MPH*(alpha, S, R)`` with ``R`` of shape ``(p, m)``."""

    alpha: np.ndarray
    S: np.ndarray
    R: np.ndarray

    def __post_init__(self):
        base = ContPhaseType(self.alpha, self.S)  # validates alpha and S
        R = np.asarray(self.R, dtype=float)
        if R.ndim == 1:
            R = R[:, None]
        if R.shape[0] != base.order:
            raise ValueError(f"R has {R.shape[0]} rows, expected {base.order}")
        if np.any(R < 0):
            raise ValueError("rewards must be nonnegative")
        object.__setattr__(self, "alpha", base.alpha)
        object.__setattr__(self, "S", base.S)
        object.__setattr__(self, "R", R)

    @property
    def dim(self) -> int:
        return self.R.shape[1]

    @cached_property
    def base(self) -> ContPhaseType:
        return ContPhaseType(self.alpha, self.S)

    @cached_property
    def green(self) -> np.ndarray:
        return self.base.green

    @cached_property
    def _occupation(self) -> np.ndarray:
        # alpha U: expected time spent in each state
        return self.alpha @ self.green

    @cached_property
    def _weighted_green(self) -> np.ndarray:
        # column j is U R_j
        return self.green @ self.R

    def marginal(self, j: int) -> ContPhaseType:
        """Univariate law of ``Y_j`` (with an atom at zero if column ``j`` has zeros)."""
        return reward_transform(self.base, self.R[:, j])

    def combined(self, weights) -> ContPhaseType:
        """Law of ``sum_j w_j Y_j`` for nonnegative weights."""
        return reward_transform(self.base, self.R @ np.asarray(weights, dtype=float))


def mph_laplace(rep: MphRep, a) -> float:
    """
    Joint transform ``E[exp(a . Y)] = alpha (Delta(R a) + S)^{-1} S e`` for ``a <= 0``.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (rep.dim,):
        raise ValueError(f"a must have length {rep.dim}")
    if np.any(a > 0):
        raise ValueError("the transform is only evaluated for nonpositive arguments")
    return float(np.real(_resolvent_form(rep, rep.R @ a)))


def _resolvent_form(rep, diag):
    """``alpha (Delta(diag) + S)^{-1} S e``; ``diag`` may be complex."""
    A = np.diag(diag) + rep.S
    rhs = rep.S.sum(axis=1).astype(A.dtype)
    return rep.alpha @ linalg.solve(A, rhs)


def mph_mean(rep: MphRep) -> np.ndarray:
    """``E[Y_i] = alpha U R_i``."""
    return rep._occupation @ rep.R


def mph_cross_moment(rep: MphRep, i: int, j: int) -> float:
    """``E[Y_i Y_j] = alpha U Delta(R_i) U R_j + alpha U Delta(R_j) U R_i``."""
    occ = rep._occupation
    UR = rep._weighted_green
    return float(occ @ (rep.R[:, i] * UR[:, j]) + occ @ (rep.R[:, j] * UR[:, i]))


def mph_second_moments(rep: MphRep) -> np.ndarray:
    """Matrix of all ``E[Y_i Y_j]``."""
    W = rep._occupation[:, None] * rep.R  # row k, col i: (alpha U)_k R_ki
    G = W.T @ rep._weighted_green
    return G + G.T


def mph_covariance(rep: MphRep) -> np.ndarray:
    """Covariance matrix ``Sigma`` of ``Y``."""
    mu = mph_mean(rep)
    return mph_second_moments(rep) - np.outer(mu, mu)


def mph_joint_pgf(rep: MphRep, lam: float, z) -> complex:
    """
    Joint PGF ``E[prod_j z_j^{Z_j}] = alpha (Delta(R lam (z - e)) + S)^{-1} S e``.

    :param lam: Poisson intensity per unit reward.
    :param z: Length-``m`` vector, complex allowed, ``|z_j| <= 1``.
    """
    z = np.asarray(z, dtype=complex)
    if z.shape != (rep.dim,):
        raise ValueError(f"z must have length {rep.dim}")
    if np.any(np.abs(z) > 1 + 1e-12):
        raise ValueError("the joint PGF is evaluated on the closed unit polydisc only")
    return complex(_resolvent_form(rep, lam * (rep.R @ (z - 1.0))))


def poisson_covariance(rep: MphRep, lam: float) -> np.ndarray:
    """``Var(Z) = lam Delta(mu) + lam^2 Sigma``."""
    return lam * np.diag(mph_mean(rep)) + lam ** 2 * mph_covariance(rep)


def poisson_cross_moment(rep: MphRep, lam: float, i: int, j: int) -> float:
    """``E[Z_i Z_j] = lam^2 E[Y_i Y_j]`` for ``i != j``."""
    if i == j:
        raise ValueError("i and j must differ; use poisson_covariance for the diagonal")
    return lam ** 2 * mph_cross_moment(rep, i, j)


def poisson_marginal(rep: MphRep, lam: float, j: int) -> DiscPhaseType:
    """Law of ``Z_j`` via the univariate reward path."""
    return poisson_mix(rep.marginal(j), lam)
