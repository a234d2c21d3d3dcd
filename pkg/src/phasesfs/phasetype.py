"""
Univariate continuous (PH) and discrete (DPH) phase-type distributions.

Continuous laws are stored as ``(alpha, S, defect)``: absorption time of a
Markov jump process with sub-intensity matrix ``S`` started from ``alpha``,
plus a point mass ``defect`` at zero. Discrete laws are stored as
``(pi, M, atom0, shift)``; see :class:`DiscPhaseType`.
"""

from dataclasses import dataclass
from functools import cached_property
from math import factorial

import numpy as np

from . import linalg

_MASS_TOL = 1e-9


class AllZeroReward(ValueError):
    pass


def _vector(x, name):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    return x


@dataclass(frozen=True, eq=False)
class ContPhaseType:
    """
    Continuous phase-type law ``PH(alpha, S)`` with an optional atom at zero.

    ``defect`` defaults to ``1 - sum(alpha)``.
    """

    alpha: np.ndarray
    S: np.ndarray
    defect: float = None

    def __post_init__(self):
        alpha = _vector(self.alpha, "alpha")
        S = np.atleast_2d(np.asarray(self.S, dtype=float))
        if S.shape != (alpha.size, alpha.size):
            raise ValueError(f"S has shape {S.shape}, expected {(alpha.size, alpha.size)}")
        if np.any(alpha < -_MASS_TOL):
            raise ValueError("alpha must be nonnegative")
        off = S - np.diag(np.diag(S))
        if np.any(off < -_MASS_TOL * max(1.0, np.abs(S).max())):
            raise ValueError("S must have nonnegative off-diagonal entries")
        if np.any(S.sum(axis=1) > _MASS_TOL * max(1.0, np.abs(S).max())):
            raise ValueError("S must have nonpositive row sums")
        defect = 1.0 - alpha.sum() if self.defect is None else float(self.defect)
        if not -_MASS_TOL <= defect <= 1.0 + _MASS_TOL or abs(alpha.sum() + defect - 1.0) > 1e-8:
            raise ValueError("alpha and defect must sum to one")
        object.__setattr__(self, "alpha", np.clip(alpha, 0.0, None))
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "defect", min(max(defect, 0.0), 1.0))

    @property
    def order(self) -> int:
        return self.alpha.size

    @property
    def exit_rates(self) -> np.ndarray:
        """``s = -S e``."""
        return -self.S.sum(axis=1)

    @cached_property
    def green(self) -> np.ndarray:
        """Green matrix ``U = (-S)^{-1}``: expected occupation times."""
        return linalg.inv(-self.S)

    def mean(self) -> float:
        return ph_moment(self, 1)

    def var(self) -> float:
        return ph_moment(self, 2) - ph_moment(self, 1) ** 2


@dataclass(frozen=True, eq=False)
class DiscPhaseType:
    """
    Discrete phase-type law.

    The chain on transient states has sub-transition matrix ``M`` and
    (possibly defective) initial vector ``pi``; ``tau`` is its absorption
    step count, so ``tau >= 1``. The represented variable is ``X = tau - shift``
    on the event that the chain starts, and ``X = 0`` with probability
    ``atom0 = 1 - sum(pi)``.

    With ``shift=1`` (the output of :func:`poisson_mix`) ``X`` is the Poisson
    count ``Z`` and ``tau = Z + 1``.
    """

    pi: np.ndarray
    M: np.ndarray
    atom0: float = None
    shift: int = 0

    def __post_init__(self):
        pi = _vector(self.pi, "pi")
        M = np.atleast_2d(np.asarray(self.M, dtype=float))
        if M.shape != (pi.size, pi.size):
            raise ValueError(f"M has shape {M.shape}, expected {(pi.size, pi.size)}")
        if np.any(M < -_MASS_TOL) or np.any(M.sum(axis=1) > 1.0 + 1e-9):
            raise ValueError("M must be nonnegative and substochastic")
        if np.any(pi < -_MASS_TOL):
            raise ValueError("pi must be nonnegative")
        atom0 = 1.0 - pi.sum() if self.atom0 is None else float(self.atom0)
        if abs(pi.sum() + atom0 - 1.0) > 1e-8:
            raise ValueError("pi and atom0 must sum to one")
        if self.shift not in (0, 1):
            raise ValueError("shift must be 0 or 1")
        object.__setattr__(self, "pi", np.clip(pi, 0.0, None))
        object.__setattr__(self, "M", np.clip(M, 0.0, None))
        object.__setattr__(self, "atom0", min(max(atom0, 0.0), 1.0))

    @property
    def order(self) -> int:
        return self.pi.size

    @property
    def exit_probs(self) -> np.ndarray:
        """``m = (I - M) e``."""
        return np.clip(1.0 - self.M.sum(axis=1), 0.0, None)

    @cached_property
    def _fundamental(self):
        return linalg.lu_factor(np.eye(self.order) - self.M)

    @cached_property
    def spectral_radius(self) -> float:
        return linalg.spectral_radius(self.M)

    def mean(self) -> float:
        """Mean of the represented variable ``X``."""
        return dph_mean(self) - self.shift

    def var(self) -> float:
        mu = dph_mean(self)
        return dph_factorial2(self) + mu - mu ** 2

    def pmf(self, k):
        """``P(X = k)`` for integer ``k >= 0`` (scalar or array)."""
        k = np.asarray(k)
        table = pmf_table(self, int(k.max()) if k.size else 0)
        return table[k]

    def pgf(self, z):
        """``E[z^X]``."""
        core = self.pi @ linalg.lu_solve(_resolvent(self, z), self.exit_probs.astype(np.result_type(z, float)))
        return self.atom0 + (z if self.shift == 0 else 1.0) * core


# ---------------------------------------------------------------------------
# continuous phase-type


def ph_density(ph: ContPhaseType, t):
    """Density ``alpha exp(S t) s`` of the absolutely continuous part, for ``t > 0``."""
    s = ph.exit_rates
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.array([ph.alpha @ linalg.matrix_exponential(ph.S, x) @ s for x in ts])
    return out[0] if np.ndim(t) == 0 else out


def ph_cdf(ph: ContPhaseType, t):
    """``P(tau <= t) = defect + alpha e - alpha exp(S t) e``."""
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts < 0):
        raise ValueError("t must be nonnegative")
    mass = ph.alpha.sum()
    out = np.array([ph.defect + mass - ph.alpha @ linalg.matrix_exponential(ph.S, x).sum(axis=1) for x in ts])
    out = np.clip(out, 0.0, 1.0)
    return out[0] if np.ndim(t) == 0 else out


def ph_laplace(ph: ContPhaseType, t: float) -> float:
    """``E[exp(-t tau)] = defect + alpha (tI - S)^{-1} s`` for ``t >= 0``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    x = linalg.solve(t * np.eye(ph.order) - ph.S, ph.exit_rates)
    return float(ph.defect + ph.alpha @ x)


def ph_moment(ph: ContPhaseType, k: int) -> float:
    """Raw moment ``E[tau^k] = k! alpha U^k e``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    v = np.ones(ph.order)
    factor = linalg.lu_factor(-ph.S)
    for _ in range(k):
        v = linalg.lu_solve(factor, v)
    return float(factorial(k) * (ph.alpha @ v))


def _zero_reward_reduction(alpha, S, r):
    """
    Censor the embedded chain to the states with positive reward.

    Returns ``(pi, P, keep)`` where ``keep`` indexes the positive-reward states,
    ``P`` is the censored embedded transition matrix and ``pi`` the entry
    distribution into those states (defective if they may never be visited).
    """
    keep = np.flatnonzero(r > 0)
    drop = np.flatnonzero(r == 0)
    diag = np.diag(S)
    if np.any(diag >= 0):
        raise ValueError("every transient state needs a negative diagonal rate")
    Q = -S / diag[:, None]
    np.fill_diagonal(Q, 0.0)
    Qpp = Q[np.ix_(keep, keep)]
    Qpz = Q[np.ix_(keep, drop)]
    Qzp = Q[np.ix_(drop, keep)]
    Qzz = Q[np.ix_(drop, drop)]
    # (I - Q00)^{-1} Q0+ : where the chain re-enters E+ after wandering in E0
    reentry = linalg.solve(np.eye(drop.size) - Qzz, Qzp) if drop.size else np.zeros((0, keep.size))
    P = Qpp + Qpz @ reentry
    pi = alpha[keep] + alpha[drop] @ reentry
    return pi, P, keep


def reward_transform(ph: ContPhaseType, r) -> ContPhaseType:
    """
    Law of the accumulated reward ``Y = int_0^tau r(X_t) dt``.

    Strictly positive rewards simply rescale the rows of ``S``. Zero rewards
    are removed by censoring the embedded chain; the probability of never
    earning any reward becomes an atom at zero (added to any existing defect).

    :raises AllZeroReward: if every reward is zero.
    """
    r = _vector(r, "r")
    if r.size != ph.order:
        raise ValueError(f"reward vector has length {r.size}, expected {ph.order}")
    if np.any(r < 0):
        raise ValueError("rewards must be nonnegative")
    if not np.any(r > 0):
        raise AllZeroReward("at least one reward must be positive")
    if np.all(r > 0):
        return ContPhaseType(ph.alpha, ph.S / r[:, None], ph.defect)

    pi, P, keep = _zero_reward_reduction(ph.alpha, ph.S, r)
    scale = np.diag(ph.S)[keep] / r[keep]
    T_star = scale[:, None] * (np.eye(keep.size) - P)
    pi = np.clip(pi, 0.0, None)
    return ContPhaseType(pi, T_star, 1.0 - pi.sum())


def poisson_mix(ph: ContPhaseType, lam: float) -> DiscPhaseType:
    """
    Law of ``Z`` where ``Z | tau ~ Poisson(lam tau)``.

    ``Z + 1`` is ``DPH(alpha, M)`` with ``M = (I - S/lam)^{-1}``; the returned
    object has ``shift=1`` so that its ``pmf``/``pgf``/``mean`` refer to ``Z``.
    A defect of ``tau`` becomes extra mass of ``Z`` at zero.
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    M = linalg.inv(np.eye(ph.order) - ph.S / lam)
    return DiscPhaseType(ph.alpha, M, ph.defect, shift=1)


# ---------------------------------------------------------------------------
# discrete phase-type


def dph_pmf(d: DiscPhaseType, i: int) -> float:
    """
    ``P(tau = i) = pi M^{i-1} m`` for ``i >= 1``, where ``tau = X + shift``.

    The atom ``atom0`` of ``X`` sits at ``tau = shift`` and is included there.
    """
    if i < 0:
        raise ValueError("i must be nonnegative")
    value = d.atom0 if i == d.shift else 0.0
    if i >= 1:
        v = d.pi.copy()
        for _ in range(i - 1):
            v = v @ d.M
        value += float(v @ d.exit_probs)
    return value


def pmf_table(d: DiscPhaseType, kmax: int) -> np.ndarray:
    """``P(X = k)`` for ``k = 0..kmax``."""
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    out = np.zeros(kmax + 1)
    out[0] = d.atom0
    m = d.exit_probs
    v = d.pi.copy()
    for tau in range(1, kmax + 1 + d.shift):
        k = tau - d.shift
        if k >= 0:
            out[k] += v @ m
        v = v @ d.M
    return out


def pmf_until(d: DiscPhaseType, tol: float = 1e-12, max_terms: int = 10 ** 6) -> np.ndarray:
    """``P(X = k)`` for ``k = 0, 1, ...`` until the cumulative mass reaches ``1 - tol``."""
    probs = [d.atom0]
    m = d.exit_probs
    v = d.pi.copy()
    total = d.atom0
    tau = 1
    while total < 1.0 - tol and len(probs) < max_terms:
        p = float(v @ m)
        if tau - d.shift == 0:
            probs[0] += p
        else:
            probs.append(p)
        total += p
        v = v @ d.M
        tau += 1
    return np.array(probs)


def _resolvent(d: DiscPhaseType, z):
    if abs(z) > 1.0 and abs(z) * d.spectral_radius >= 1.0:
        raise ValueError("z outside the convergence disc of the PGF")
    return linalg.lu_factor(np.eye(d.order) - z * d.M)


def dph_pgf(d: DiscPhaseType, z):
    """``E[z^tau] = atom0 z^shift + z pi (I - zM)^{-1} (I - M) e``."""
    m = d.exit_probs.astype(np.result_type(z, float))
    core = z * (d.pi @ linalg.lu_solve(_resolvent(d, z), m))
    return d.atom0 * z ** d.shift + core


def dph_mean(d: DiscPhaseType) -> float:
    """``E[tau] = pi (I - M)^{-1} e`` (plus the atom's contribution)."""
    x = linalg.lu_solve(d._fundamental, np.ones(d.order))
    return float(d.pi @ x + d.atom0 * d.shift)


def dph_factorial2(d: DiscPhaseType) -> float:
    """``E[tau (tau - 1)] = 2 pi M (I - M)^{-2} e``."""
    x = linalg.lu_solve(d._fundamental, np.ones(d.order))
    x = linalg.lu_solve(d._fundamental, x)
    return float(2.0 * d.pi @ (d.M @ x))
