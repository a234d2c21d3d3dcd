"""
State space and sub-intensity matrix of the block-counting process.

A state is a vector ``a = (a_1, ..., a_{n-1})`` where ``a_i`` is the number of
branches subtending ``i`` of the ``n`` sampled sequences, so ``sum_i i a_i = n``.
States are the integer partitions of ``n`` other than ``{n}`` itself (the MRCA,
which is the absorbing state).
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, List, Tuple

import numpy as np

#: Largest sample size accepted by :func:`build_model` (p(30) - 1 = 5603 states).
MAX_SAMPLE_SIZE = 30


class InvalidSampleSize(ValueError):
    pass


class SampleSizeTooLarge(ValueError):
    pass


def integer_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """
    Yield the partitions of ``n`` as non-increasing tuples, in reverse lexicographic order.

    >>> list(integer_partitions(4))
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n == 0:
        yield ()
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest

    yield from rec(n, n)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Number of integer partitions p(n), by the standard coin-change recursion."""
    if n < 0:
        return 0
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def state_count(n: int) -> int:
    """Size of the transient state space, p(n) - 1."""
    if n < 2:
        raise InvalidSampleSize(f"n must be at least 2, got {n}")
    return partition_count(n) - 1


def _count_vector(partition, n):
    a = [0] * (n - 1)
    for part in partition:
        a[part - 1] += 1
    return tuple(a)


def _state_key(a):
    # descending lineage count, then lexicographically descending
    return (-sum(a), tuple(-x for x in a))


@dataclass(frozen=True, eq=False)
class BlockCountingModel:
    """
    Block-counting process for a sample of size ``n``.

    ``states[k]`` is row ``k`` of the state matrix ``A``; ``T`` is the
    sub-intensity matrix and ``alpha`` the initial distribution (``e_1``).
    """

    n: int
    states: Tuple[Tuple[int, ...], ...]
    T: np.ndarray
    alpha: np.ndarray
    rates: Tuple[Tuple[int, int, int], ...]  # exact integer (from, to, rate) triples

    @property
    def A(self) -> np.ndarray:
        """State matrix, shape ``(p, n-1)``."""
        return np.array(self.states, dtype=float).reshape(len(self.states), self.n - 1)

    @property
    def exit_rates(self) -> np.ndarray:
        """Absorption rates ``t = -T e``."""
        return -self.T.sum(axis=1) + 0.0

    @property
    def size(self) -> int:
        return len(self.states)

    def lineages(self) -> np.ndarray:
        return np.array([sum(a) for a in self.states])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "states": [list(a) for a in self.states],
            "T": self.T.tolist(),
        }


def _transitions(a):
    """Yield ``(target, rate)`` for every coalescence out of state ``a`` (rates are integers)."""
    m = len(a)
    for i in range(m):
        if a[i] == 0:
            continue
        for j in range(i, m):
            if i == j:
                rate = comb(a[i], 2)
            else:
                rate = a[i] * a[j]
            if rate == 0:
                continue
            merged = i + j + 1  # zero-based index of block size (i+1)+(j+1)
            b = list(a)
            b[i] -= 1
            b[j] -= 1
            if merged < m:
                b[merged] += 1
            yield tuple(b), rate


def build_model(n: int) -> BlockCountingModel:
    """
    Enumerate the block-counting state space for sample size ``n`` and build its rate matrix.

    States are ordered by decreasing number of lineages, ties broken by
    lexicographically decreasing count vectors, which makes ``T`` upper
    triangular. Coalescing blocks of distinct sizes ``i != j`` happens at
    rate ``a_i a_j``, two blocks of the same size ``i`` at rate ``C(a_i, 2)``.

    :raises InvalidSampleSize: for ``n < 2``.
    :raises SampleSizeTooLarge: for ``n > 30``.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidSampleSize(f"n must be an integer >= 2, got {n!r}")
    if n > MAX_SAMPLE_SIZE:
        raise SampleSizeTooLarge(f"n={n} exceeds the supported maximum {MAX_SAMPLE_SIZE}")
    n = int(n)

    states = sorted(
        (_count_vector(part, n) for part in integer_partitions(n) if len(part) > 1),
        key=_state_key,
    )
    index = {a: k for k, a in enumerate(states)}
    p = len(states)

    rates: List[Tuple[int, int, int]] = []
    diag = [0] * p
    for k, a in enumerate(states):
        for b, rate in _transitions(a):
            diag[k] -= rate
            if b not in index:
                continue  # merged into the single block of size n: absorbed
            rates.append((k, index[b], rate))

    T = np.zeros((p, p))
    for k, l, rate in rates:
        T[k, l] += rate
    T[np.arange(p), np.arange(p)] = diag

    alpha = np.zeros(p)
    alpha[0] = 1.0
    return BlockCountingModel(n=n, states=tuple(states), T=T, alpha=alpha, rates=tuple(rates))
