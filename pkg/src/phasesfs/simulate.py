"""
Monte Carlo sampling of the SFS by running the block-counting chain.

Replicates are split into fixed-size chunks; chunk ``i`` draws from its own
Philox (counter-based) stream spawned from ``SeedSequence(seed)``, so the
output depends only on the seed, never on how chunks are scheduled.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional

import numpy as np

from .blockcounting import BlockCountingModel, build_model

CHUNK_SIZE = 1 << 16


@dataclass(frozen=True)
class SimConfig:
    n: int
    theta: float
    replicates: int
    seed: int = 0

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")
        if not self.theta > 0:
            raise ValueError("theta must be positive")
        if self.n < 2:
            raise ValueError("n must be at least 2")


@dataclass(frozen=True, eq=False)
class SimSample:
    sfs: np.ndarray  # (replicates, n-1) mutation counts
    branch_lengths: Optional[np.ndarray] = None  # (replicates, n-1) i-ton branch lengths
    tmrca: Optional[np.ndarray] = None
    seed: int = 0

    def statistic(self, c) -> np.ndarray:
        return self.sfs @ np.asarray(c, dtype=float)


def _jump_table(model: BlockCountingModel):
    """Cumulative embedded-chain probabilities; column ``p`` is absorption."""
    T = model.T
    p = T.shape[0]
    probs = np.zeros((p, p + 1))
    rates = -np.diag(T)
    probs[:, :p] = T / rates[:, None]
    np.fill_diagonal(probs[:, :p], 0.0)
    probs[:, p] = model.exit_rates / rates
    return np.cumsum(probs, axis=1)


def _simulate_chunk(model, theta, size, seed_seq, jump_cdf):
    rng = np.random.Generator(np.random.Philox(seed_seq))
    A = model.A
    p = A.shape[0]
    state = np.zeros(size, dtype=np.intp)
    Y = np.zeros((size, model.n - 1))
    tmrca = np.zeros(size)
    # every coalescence removes exactly one lineage, so all replicates share the lineage count
    for k in range(model.n, 1, -1):
        hold = rng.exponential(1.0 / comb(k, 2), size)
        Y += A[state] * hold[:, None]
        tmrca += hold
        u = rng.random(size)
        nxt = (u[:, None] > jump_cdf[state]).sum(axis=1)
        state = np.minimum(nxt, p - 1) if k > 2 else state
    sfs = rng.poisson(theta / 2.0 * Y)
    return sfs, Y, tmrca


def _chunks(cfg):
    sizes = [CHUNK_SIZE] * (cfg.replicates // CHUNK_SIZE)
    if cfg.replicates % CHUNK_SIZE:
        sizes.append(cfg.replicates % CHUNK_SIZE)
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(sizes))
    return list(zip(sizes, seeds))


def iter_sfs(cfg: SimConfig, model: Optional[BlockCountingModel] = None) -> Iterator[SimSample]:
    """Yield the simulation chunk by chunk."""
    model = model or build_model(cfg.n)
    jump_cdf = _jump_table(model)
    for size, seed_seq in _chunks(cfg):
        sfs, Y, tmrca = _simulate_chunk(model, cfg.theta, size, seed_seq, jump_cdf)
        yield SimSample(sfs, Y, tmrca, cfg.seed)


def simulate_sfs(cfg: SimConfig, model: Optional[BlockCountingModel] = None,
                 keep_branch_lengths: bool = False, workers: int = 1) -> SimSample:
    """
    Simulate ``cfg.replicates`` site frequency spectra.

    Each replicate starts with ``n`` singleton branches, holds for an
    exponential time at rate ``C(k, 2)`` with ``k`` lineages, adds the time
    to every i-ton branch length present, and jumps along the embedded chain.
    Mutation counts are ``Poisson(theta/2 * Y_i)``.

    :param workers: Number of threads; the result does not depend on it.
    """
    if model is None:
        model = build_model(cfg.n)
    elif model.n != cfg.n:
        raise ValueError("model was built for a different sample size")
    jump_cdf = _jump_table(model)
    jobs = _chunks(cfg)

    def run(job):
        return _simulate_chunk(model, cfg.theta, job[0], job[1], jump_cdf)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(job) for job in jobs]
    sfs = np.concatenate([part[0] for part in parts])
    Y = np.concatenate([part[1] for part in parts]) if keep_branch_lengths else None
    tmrca = np.concatenate([part[2] for part in parts]) if keep_branch_lengths else None
    return SimSample(sfs, Y, tmrca, cfg.seed)


def simulate_statistic(cfg: SimConfig, c, model: Optional[BlockCountingModel] = None,
                       workers: int = 1) -> np.ndarray:
    """Samples of ``c . xi``."""
    c = np.asarray(c, dtype=float)
    if c.shape != (cfg.n - 1,):
        raise ValueError(f"c must have length {cfg.n - 1}")
    return simulate_sfs(cfg, model, workers=workers).statistic(c)
