"""
Discrete phase-type representation of ``c . xi`` for nonnegative integer ``c``.

Each block-counting state ``i`` is expanded into a countdown block of size
``max{c_j : a_ij > 0}``. A mutation of type ``j`` (probability proportional to
``a_ij``) enters the block so that exactly ``c_j`` steps elapse before the
bottom row of the block, which holds the next-mutation transition
probabilities. Starting from the bottom row of the first block,
``1 + c . xi`` is the absorption time.
"""

from dataclasses import dataclass
from typing import Dict, Set, Tuple

import numpy as np

from . import linalg
from .phasetype import DiscPhaseType, _zero_reward_reduction, pmf_table
from .sfs import SfsModel

#: Default cap on the number of rows of the block matrix.
DEFAULT_MAX_ROWS = 20000


class NonPositiveCoefficient(ValueError):
    pass


class BlockMatrixTooLarge(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IntWeightedLaw:
    c: np.ndarray
    law: DiscPhaseType  # law of c . xi (shift=1: tau = 1 + c . xi)
    states: np.ndarray  # block-counting states that carry a block
    block_sizes: np.ndarray
    block_index: Dict[Tuple[int, int], int]  # (state, countdown position 1..size) -> row
    next_mutation: np.ndarray  # p_ij between the states above
    type_weights: Tuple[np.ndarray, ...]

    @property
    def Mtilde(self) -> np.ndarray:
        return self.law.M

    @property
    def pi_tilde(self) -> np.ndarray:
        return self.law.pi

    def pmf(self, kmax: int) -> np.ndarray:
        """``P(c . xi = k)`` for ``k = 0..kmax``."""
        return pmf_table(self.law, kmax)

    def pgf(self, z):
        """``E[z^{c . xi}]``."""
        return self.law.pgf(z)

    def mean(self) -> float:
        return self.law.mean()


def _validate_coefficients(c, n):
    c = np.asarray(c)
    if c.shape != (n - 1,):
        raise ValueError(f"c must have length {n - 1}")
    if not np.all(np.isfinite(c)) or np.any(np.asarray(c, dtype=float) != np.round(np.asarray(c, dtype=float))):
        raise ValueError("coefficients must be integers")
    c = np.asarray(np.round(np.asarray(c, dtype=float)), dtype=np.int64)
    if np.any(c < 0) or not np.any(c > 0):
        raise NonPositiveCoefficient("coefficients must be nonnegative integers, not all zero")
    return c


def build_intweight_law(sm: SfsModel, c, max_rows: int = DEFAULT_MAX_ROWS) -> IntWeightedLaw:
    """
    Build the block DPH whose absorption time is ``1 + c . xi``.

    Zero coefficients are allowed: branch types with ``c_j = 0`` carry no
    mutations that count, and states whose branches all have ``c_j = 0`` are
    censored out of the chain first.

    :raises NonPositiveCoefficient: for negative or all-zero ``c``.
    :raises BlockMatrixTooLarge: if the block matrix would exceed ``max_rows`` rows.
    """
    c = _validate_coefficients(c, sm.n)
    A = sm.model.A
    counted = A * (c > 0)
    # mutations that count arrive at rate lam per counted branch
    r = counted.sum(axis=1)

    if np.all(r > 0):
        keep = np.arange(A.shape[0])
        pi = sm.model.alpha.copy()
        S = sm.model.T / r[:, None]
    else:
        pi, P, keep = _zero_reward_reduction(sm.model.alpha, sm.model.T, r)
        S = (np.diag(sm.model.T)[keep] / r[keep])[:, None] * (np.eye(keep.size) - P)
        pi = np.clip(pi, 0.0, None)

    sizes = np.array([int(np.max(c * (A[i] > 0))) for i in keep])
    total = int(sizes.sum())
    if total > max_rows:
        raise BlockMatrixTooLarge(f"block matrix needs {total} rows (cap {max_rows})")

    P_next = linalg.inv(np.eye(keep.size) - S / sm.lam)

    weights = []
    for i, size in zip(keep, sizes):
        w = np.zeros(size)
        for j in np.flatnonzero(counted[i]):
            w[size - c[j]] += A[i, j]
        weights.append(w / w.sum())

    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    bottoms = starts + sizes - 1
    Mt = np.zeros((total, total))
    for a, (start, size) in enumerate(zip(starts, sizes)):
        rows = np.arange(start, start + size - 1)
        Mt[rows, rows + 1] = 1.0
        for b, (start_b, size_b) in enumerate(zip(starts, sizes)):
            if P_next[a, b] != 0.0:
                Mt[bottoms[a], start_b:start_b + size_b] += P_next[a, b] * weights[b]

    pi_t = np.zeros(total)
    pi_t[bottoms] = pi
    index = {
        (int(state), pos + 1): int(start + pos)
        for state, start, size in zip(keep, starts, sizes)
        for pos in range(size)
    }
    law = DiscPhaseType(pi_t, Mt, 1.0 - pi.sum(), shift=1)
    return IntWeightedLaw(
        c=c, law=law, states=keep, block_sizes=sizes, block_index=index,
        next_mutation=P_next, type_weights=tuple(weights),
    )


def support_scan(law: IntWeightedLaw, kmax: int, threshold: float = 1e-14) -> Set[int]:
    """Values ``k <= kmax`` with ``P(c . xi = k) > threshold``."""
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    probs = law.pmf(kmax)
    return {int(k) for k in np.flatnonzero(probs > threshold)}
