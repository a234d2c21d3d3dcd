"""
Site frequency spectrum under the standard coalescent with mutation.

The i-ton branch lengths are ``MPH*(e_1, T, A)`` for the block-counting
process, and given them the SFS entries are independent
``Poisson(theta/2 * Y_i)`` counts.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .blockcounting import BlockCountingModel, build_model
from .mphstar import MphRep, mph_covariance, mph_joint_pgf, mph_mean, poisson_covariance
from .phasetype import ContPhaseType, DiscPhaseType, poisson_mix, reward_transform


class AllZeroMask(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SfsModel:
    """Block-counting model paired with the mutation rate ``theta``."""

    model: BlockCountingModel
    theta: float

    def __post_init__(self):
        if not self.theta > 0:
            raise ValueError("theta must be positive")

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def lam(self) -> float:
        """Mutation intensity per unit branch length, ``theta / 2``."""
        return self.theta / 2.0

    @cached_property
    def rep(self) -> MphRep:
        return MphRep(self.model.alpha, self.model.T, self.model.A)

    @cached_property
    def base(self) -> ContPhaseType:
        """Time to the most recent common ancestor."""
        return ContPhaseType(self.model.alpha, self.model.T)

    def with_theta(self, theta: float) -> "SfsModel":
        return SfsModel(self.model, theta)


def sfs_model(n: int, theta: float, model: Optional[BlockCountingModel] = None) -> SfsModel:
    """Build the SFS model for sample size ``n`` (reusing ``model`` if given)."""
    if model is None:
        model = build_model(n)
    elif model.n != n:
        raise ValueError("model was built for a different sample size")
    return SfsModel(model, float(theta))


def sfs_joint_pgf(sm: SfsModel, z) -> complex:
    """``E[prod_i z_i^{xi_i}]`` for ``|z_i| <= 1``."""
    return mph_joint_pgf(sm.rep, sm.lam, z)


def branch_length_means(sm: SfsModel) -> np.ndarray:
    """``E[Y_i] = 2 / i``."""
    return mph_mean(sm.rep)


def branch_length_covariance(sm: SfsModel) -> np.ndarray:
    return mph_covariance(sm.rep)


def expected_sfs(sm: SfsModel) -> np.ndarray:
    """``E[xi_i] = theta / i``, computed from the phase-type representation."""
    return sm.lam * mph_mean(sm.rep)


def sfs_covariance(sm: SfsModel) -> np.ndarray:
    """``Var(xi) = (theta/2) Delta(mu) + (theta^2/4) Sigma``."""
    return poisson_covariance(sm.rep, sm.lam)


def iton_branch_law(sm: SfsModel, i: int) -> ContPhaseType:
    """Law of the total length of branches with ``i`` descendants, ``1 <= i <= n-1``."""
    _check_index(sm, i)
    return reward_transform(sm.base, sm.model.A[:, i - 1])


def iton_count_law(sm: SfsModel, i: int) -> DiscPhaseType:
    """Law of ``xi_i``."""
    return poisson_mix(iton_branch_law(sm, i), sm.lam)


def zero_one_statistic_law(sm: SfsModel, mask) -> DiscPhaseType:
    """
    Law of ``sum_i mask_i xi_i`` for a 0-1 mask.

    Covers the segregating sites (all ones), tail statistics and folded
    SFS entries.

    :raises AllZeroMask: if no entry is selected.
    """
    mask = np.asarray(mask)
    if mask.shape != (sm.n - 1,):
        raise ValueError(f"mask must have length {sm.n - 1}")
    if not np.all(np.isin(mask, (0, 1))):
        raise ValueError("mask entries must be 0 or 1")
    if not mask.any():
        raise AllZeroMask("mask selects no SFS entry")
    r = sm.model.A @ mask.astype(float)
    return poisson_mix(reward_transform(sm.base, r), sm.lam)


def segregating_sites_law(sm: SfsModel) -> DiscPhaseType:
    return zero_one_statistic_law(sm, np.ones(sm.n - 1, dtype=int))


def tail_statistic_mask(n: int, i: int) -> np.ndarray:
    """Mask for ``xi_{i+} = xi_i + ... + xi_{n-1}``."""
    mask = np.zeros(n - 1, dtype=int)
    mask[i - 1:] = 1
    return mask


def folded_mask(n: int, i: int) -> np.ndarray:
    """Mask for the folded entry ``eta_i = xi_i + xi_{n-i}``."""
    mask = np.zeros(n - 1, dtype=int)
    mask[i - 1] = 1
    mask[n - i - 1] = 1
    return mask


def _check_index(sm, i):
    if not 1 <= i <= sm.n - 1:
        raise IndexError(f"i-ton index must lie in 1..{sm.n - 1}, got {i}")
