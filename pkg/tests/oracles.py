"""
Independent reference computations used by the tests.

None of these go through the phase-type machinery under test: they use
power series, explicit recursions on the jump chain, closed forms, or
lattice FFTs of generating functions.
"""

from math import comb

import numpy as np
from scipy import stats


def taylor_expm(S, t, terms=40):
    """Truncated series sum_{k<=terms} (S t)^k / k!."""
    S = np.asarray(S, dtype=float) * t
    out = np.eye(S.shape[0])
    term = np.eye(S.shape[0])
    for k in range(1, terms + 1):
        term = term @ S / k
        out = out + term
    return out


def geometric_pmf(theta, kmax):
    """Segregating sites for n=2: P(S=k) = (1/(1+theta)) (theta/(1+theta))^k."""
    k = np.arange(kmax + 1)
    return (1.0 / (1.0 + theta)) * (theta / (1.0 + theta)) ** k


def lineage_count_path(n):
    """E[T_MRCA] as the plain sum of expected holding times 1/C(k,2)."""
    return sum(1.0 / comb(k, 2) for k in range(2, n + 1))


def never_visits(model, target):
    """
    Probability that the embedded jump chain of ``model`` never enters state
    ``target``, by forward propagation of path probabilities.
    """
    T = model.T
    p = T.shape[0]
    jump = np.where(np.eye(p, dtype=bool), 0.0, T) / (-np.diag(T))[:, None]
    reach = np.zeros(p)
    reach[0] = 1.0
    # states are topologically ordered, so one forward pass suffices
    for i in range(p):
        if i == target:
            continue
        reach[i + 1:] += reach[i] * jump[i, i + 1:]
    return 1.0 - reach[target]


def weighted_count_pmf(model, theta, c, kmax):
    """
    Exact ``P(c . xi = k)`` for nonnegative integer ``c`` by a recursion over
    (state, accumulated value).

    In state ``i`` the next event is a mutation on one of the ``a_ij``
    branches of type ``j`` (rate ``theta/2`` each) or a coalescence; a
    mutation of type ``j`` adds ``c_j``. Mutations with ``c_j = 0`` change
    nothing and are dropped from the competition.
    """
    c = np.asarray(c, dtype=int)
    A, T = model.A, model.T
    lam = theta / 2.0
    p = T.shape[0]
    exit_rates = -T.sum(axis=1)
    f = np.zeros((p, kmax + 1))
    for i in range(p - 1, -1, -1):
        mut = lam * A[i] * (c > 0)
        total = mut.sum() - T[i, i]
        p_mut = mut / total
        p_jump = T[i].copy() / total
        p_jump[i] = 0.0
        p_abs = exit_rates[i] / total
        for v in range(kmax + 1):
            acc = p_abs if v == 0 else 0.0
            acc += p_jump[i + 1:] @ f[i + 1:, v]
            for j in np.flatnonzero(c > 0):
                if v - c[j] >= 0:
                    acc += p_mut[j] * f[i, v - c[j]]
            f[i, v] = acc
    return f[0]


def poisson_mixture_pmf(Y, c, kmax, lam, size=128, chunk=20000):
    """
    Average over sampled branch lengths ``Y`` (replicates x types) of the
    conditional law of ``c . xi`` given ``Y``, where ``xi_j ~ Poisson(lam Y_j)``.

    Given ``Y`` the PGF is ``prod_j exp(lam Y_j (z^{c_j} - 1))``; it is
    evaluated at ``size`` roots of unity and inverted with an FFT.
    Returns the mean of the conditional pmfs and its standard error.
    """
    c = np.asarray(c, dtype=int)
    z = np.exp(-2j * np.pi * np.arange(size) / size)
    zc = z[None, :] ** c[:, None] - 1.0  # (types, size)
    total = np.zeros(kmax + 1)
    total_sq = np.zeros(kmax + 1)
    for start in range(0, Y.shape[0], chunk):
        block = Y[start:start + chunk]
        G = np.exp(lam * block @ zc)
        cond = np.real(np.fft.ifft(G, axis=1))[:, :kmax + 1]
        total += cond.sum(axis=0)
        total_sq += (cond ** 2).sum(axis=0)
    N = Y.shape[0]
    mean = total / N
    if N < 2:
        return mean, np.full_like(mean, np.inf)
    var = (total_sq - N * mean ** 2) / (N - 1)
    return mean, np.sqrt(np.clip(var, 0.0, None) / N)


def tajima_exact(n, theta, nk=None, ns=128):
    """
    Exact atoms of ``theta_pi - theta_W`` (the Tajima difference).

    ``theta_pi = 2 K / (n(n-1))`` with ``K = sum_i i(n-i) xi_i`` and
    ``theta_W = S / a_1``, so the law follows from the joint pmf of the
    integers ``(K, S)``. That pmf is read off the joint PGF
    ``E[u^K w^S] = E[prod_i (u^{i(n-i)} w)^{xi_i}]`` evaluated on a
    ``nk x ns`` grid of roots of unity and inverted by a 2-D FFT.

    Returns sorted values and their probabilities.
    """
    from phasesfs.blockcounting import build_model

    model = build_model(n)
    A, T = model.A, model.T
    lam = theta / 2.0
    exit_rates = -T.sum(axis=1)
    i = np.arange(1, n)
    kw = i * (n - i)
    if nk is None:
        nk = 1 << int(np.ceil(np.log2(int(kw.max()) * ns)))
    u = np.exp(2j * np.pi * np.arange(nk) / nk)
    w = np.exp(2j * np.pi * np.arange(ns) / ns)
    G = np.empty((nk, ns), dtype=complex)
    for a, uu in enumerate(u):
        z = (uu ** kw)[None, :] * w[:, None]  # (ns, n-1)
        diag = lam * (z - 1.0) @ A.T  # (ns, p)
        mats = T[None, :, :] + diag[:, :, None] * np.eye(T.shape[0])[None]
        rhs = np.broadcast_to(-exit_rates.astype(complex), (ns, T.shape[0]))[..., None]
        G[a] = np.linalg.solve(mats, rhs)[:, 0, 0]
    pmf = np.real(np.fft.fft2(G)) / (nk * ns)
    a1 = sum(1.0 / k for k in range(1, n))
    K, S = np.meshgrid(np.arange(nk), np.arange(ns), indexing="ij")
    values = 2.0 * K / (n * (n - 1)) - S / a1
    keep = pmf > 1e-15
    order = np.argsort(values[keep], kind="stable")
    return values[keep][order], pmf[keep][order]


def exact_cdf(values, probs):
    """Right-continuous CDF function of a finite atomic law."""
    cum = np.concatenate([[0.0], np.cumsum(probs)])

    def F(x):
        return cum[np.searchsorted(values, np.asarray(x) + 1e-12, side="right")]

    return F


def factorial_moment2(pmf):
    k = np.arange(pmf.size)
    return float(np.sum(k * (k - 1) * pmf))


__all__ = [
    "taylor_expm", "geometric_pmf", "lineage_count_path", "never_visits",
    "weighted_count_pmf", "poisson_mixture_pmf", "tajima_exact", "exact_cdf",
    "factorial_moment2",
]
