"""
Phase-type distributions for the site frequency spectrum (SFS) under the
standard coalescent: exact moments and laws of linear SFS statistics,
characteristic-function inversion for arbitrary coefficients, and a
reference simulator.
"""

__version__ = "0.1.0"

from .blockcounting import BlockCountingModel, build_model, integer_partitions, state_count
from .phasetype import ContPhaseType, DiscPhaseType, poisson_mix, reward_transform
from .mphstar import MphRep
from .sfs import (
    SfsModel,
    expected_sfs,
    iton_branch_law,
    iton_count_law,
    segregating_sites_law,
    sfs_covariance,
    sfs_model,
    zero_one_statistic_law,
)
from .intweight import build_intweight_law
from .estimators import blue_coefficients, classical_coefficients, estimator_variance
from .inversion import invert_cdf, quantiles
from .simulate import SimConfig, simulate_sfs

__all__ = [
    "BlockCountingModel", "build_model", "integer_partitions", "state_count",
    "ContPhaseType", "DiscPhaseType", "poisson_mix", "reward_transform", "MphRep",
    "SfsModel", "sfs_model", "expected_sfs", "sfs_covariance", "iton_branch_law",
    "iton_count_law", "segregating_sites_law", "zero_one_statistic_law",
    "build_intweight_law", "classical_coefficients", "blue_coefficients",
    "estimator_variance", "invert_cdf", "quantiles", "SimConfig", "simulate_sfs",
]
