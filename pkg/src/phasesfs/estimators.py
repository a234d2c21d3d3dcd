"""
Linear SFS statistics: classical estimators of theta, neutrality-test
differences, their variances, and the best linear unbiased estimator.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Tuple

import numpy as np

from . import linalg
from .mphstar import mph_covariance, mph_mean
from .sfs import SfsModel

ESTIMATORS = ("singleton", "watterson", "pairwise", "H", "L")
TESTS = {
    "taj_D": ("pairwise", "watterson"),
    "pi_minus_H": ("pairwise", "H"),
    "L_minus_W": ("L", "watterson"),
    "W_minus_H": ("watterson", "H"),
    "xi1_minus_W": ("singleton", "watterson"),
}


class UnknownName(KeyError):
    pass


@dataclass(frozen=True)
class WeightedStatistic:
    c: np.ndarray
    label: str
    exact: Optional[Tuple[Fraction, ...]] = None

    @property
    def n(self) -> int:
        return self.c.size + 1


@dataclass(frozen=True)
class EstimatorReport:
    c: np.ndarray
    label: str
    unbiased: bool
    variance: float


def harmonic(n: int) -> Fraction:
    """``a_1 = sum_{i=1}^{n-1} 1/i`` exactly."""
    return sum((Fraction(1, i) for i in range(1, n)), Fraction(0))


def unbiasedness_vector(n: int) -> np.ndarray:
    """``v_i = 1/i``: ``c . v = 1`` makes ``c . xi`` unbiased for theta."""
    return 1.0 / np.arange(1, n)


def _exact_coefficients(name, n):
    idx = range(1, n)
    if name == "singleton":
        return [Fraction(int(i == 1)) for i in idx]
    if name == "watterson":
        a1 = harmonic(n)
        return [1 / a1 for _ in idx]
    if name == "pairwise":
        return [Fraction(2 * i * (n - i), n * (n - 1)) for i in idx]
    if name == "H":
        return [Fraction(2 * i * i, n * (n - 1)) for i in idx]
    if name == "L":
        return [Fraction(i, n - 1) for i in idx]
    if name in TESTS:
        first, second = TESTS[name]
        return [x - y for x, y in zip(_exact_coefficients(first, n), _exact_coefficients(second, n))]
    raise UnknownName(name)


def classical_coefficients(name: str, n: int) -> WeightedStatistic:
    """
    Coefficients of a classical estimator or neutrality-test difference.

    Estimators: ``singleton``, ``watterson``, ``pairwise``, ``H``, ``L``.
    Tests: ``taj_D`` (pairwise - Watterson), ``pi_minus_H``, ``L_minus_W``,
    ``W_minus_H``, ``xi1_minus_W``.

    >>> classical_coefficients("watterson", 4).exact
    (Fraction(6, 11), Fraction(6, 11), Fraction(6, 11))
    """
    if name not in ESTIMATORS and name not in TESTS:
        raise UnknownName(f"unknown statistic {name!r}; choose from {ESTIMATORS + tuple(TESTS)}")
    if n < 2 or (name in TESTS and n < 3):
        raise ValueError(f"{name} needs a larger sample size than n={n}")
    exact = tuple(_exact_coefficients(name, n))
    return WeightedStatistic(np.array([float(x) for x in exact]), name, exact)


def integer_coefficients(w: WeightedStatistic) -> np.ndarray:
    """
    Smallest integer vector proportional to the exact coefficients.

    >>> integer_coefficients(classical_coefficients("pairwise", 4))
    array([3, 4, 3])
    """
    if w.exact is None:
        raise ValueError(f"{w.label} has no exact rational coefficients")
    scale = lcm(*(x.denominator for x in w.exact))
    ints = [int(x * scale) for x in w.exact]
    g = gcd(*ints)
    return np.array([x // g for x in ints], dtype=np.int64)


def is_unbiased(w: WeightedStatistic, tol: float = 1e-12) -> bool:
    if w.exact is not None:
        return sum(x / i for i, x in enumerate(w.exact, start=1)) == 1
    return abs(w.c @ unbiasedness_vector(w.n) - 1.0) <= tol


def covariance_matrix(sm: SfsModel) -> np.ndarray:
    """``Lambda(theta) = (theta^2/4) Sigma + theta Delta(nu)`` with ``nu = mu/2``."""
    theta = sm.theta
    nu = mph_mean(sm.rep) / 2.0
    return theta ** 2 / 4.0 * mph_covariance(sm.rep) + theta * np.diag(nu)


def statistic_mean(sm: SfsModel, c) -> float:
    """``E[c . xi] = theta/2 * c . mu``."""
    return float(sm.lam * (mph_mean(sm.rep) @ np.asarray(c, dtype=float)))


def estimator_variance(sm: SfsModel, w) -> float:
    """``Var(c . xi) = c Lambda c``."""
    c = w.c if isinstance(w, WeightedStatistic) else np.asarray(w, dtype=float)
    return float(max(c @ covariance_matrix(sm) @ c, 0.0))


def blue_coefficients(sm: SfsModel) -> WeightedStatistic:
    """
    Minimum-variance unbiased linear estimator ``Lambda^{-1} v / (v Lambda^{-1} v)``.
    """
    v = unbiasedness_vector(sm.n)
    x = linalg.solve(covariance_matrix(sm), v)
    c = x / (v @ x)
    c = c / (c @ v)
    return WeightedStatistic(c, f"BLUE(theta={sm.theta:g})")


def estimator_report(sm: SfsModel, w: WeightedStatistic) -> EstimatorReport:
    return EstimatorReport(w.c, w.label, is_unbiased(w, 1e-10), estimator_variance(sm, w))
