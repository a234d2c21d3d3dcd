import numpy as np
import pytest

from phasesfs.mphstar import (
    MphRep,
    mph_covariance,
    mph_cross_moment,
    mph_joint_pgf,
    mph_laplace,
    mph_mean,
    mph_second_moments,
    poisson_covariance,
    poisson_cross_moment,
    poisson_marginal,
)
from phasesfs.phasetype import ContPhaseType, dph_factorial2, dph_mean, dph_pgf, ph_laplace, poisson_mix, reward_transform
from phasesfs.simulate import SimConfig, simulate_sfs


def sfs_rep(model):
    return MphRep(model.alpha, model.T, model.A)


def test_laplace_at_zero(model4):
    assert mph_laplace(sfs_rep(model4), np.zeros(3)) == pytest.approx(1.0)


def test_laplace_single_column_reduces(model4):
    rep = MphRep(model4.alpha, model4.T, model4.A[:, 0])
    ph = reward_transform(rep.base, model4.A[:, 0])
    assert mph_laplace(rep, [-0.8]) == pytest.approx(ph_laplace(ph, 0.8), rel=1e-12)


def test_laplace_common_argument_is_total_length(model4):
    rep = sfs_rep(model4)
    total = reward_transform(rep.base, [4, 3, 2, 2])
    assert mph_laplace(rep, [-1, -1, -1]) == pytest.approx(ph_laplace(total, 1.0), rel=1e-12)


def test_laplace_rejects_positive_argument(model4):
    with pytest.raises(ValueError):
        mph_laplace(sfs_rep(model4), [0.1, 0, 0])


def test_means(model4, model5):
    np.testing.assert_allclose(mph_mean(sfs_rep(model4)), [2, 1, 2 / 3], rtol=1e-12)
    np.testing.assert_allclose(mph_mean(sfs_rep(model5)), [2, 1, 2 / 3, 1 / 2], rtol=1e-12)
    rep2 = MphRep([1.0], [[-1.0]], [[2.0]])
    assert mph_mean(rep2)[0] == pytest.approx(2.0)


def test_mean_is_laplace_gradient(model5):
    rep = sfs_rep(model5)
    h = 1e-6
    grad = []
    for j in range(rep.dim):
        e = np.zeros(rep.dim)
        e[j] = h
        # backward difference of second order; the transform only exists for a <= 0
        grad.append((3 * mph_laplace(rep, 0 * e) - 4 * mph_laplace(rep, -e) + mph_laplace(rep, -2 * e)) / (2 * h))
    np.testing.assert_allclose(grad, mph_mean(rep), rtol=1e-6)


def test_scalar_second_moment():
    rep = MphRep([1.0], [[-1.0]], [[2.0]])
    assert mph_cross_moment(rep, 0, 0) == pytest.approx(8.0)


def test_second_moments_symmetric_and_consistent(model5):
    rep = sfs_rep(model5)
    G = mph_second_moments(rep)
    np.testing.assert_allclose(G, G.T, atol=1e-14)
    for i in range(4):
        for j in range(4):
            assert G[i, j] == pytest.approx(mph_cross_moment(rep, i, j), rel=1e-12)
    eig = np.linalg.eigvalsh(mph_covariance(rep))
    assert eig.min() >= -1e-10


def test_cross_moment_against_simulation(model4):
    sample = simulate_sfs(SimConfig(4, 1.0, 1_000_000, seed=11), model4, keep_branch_lengths=True)
    Y = sample.branch_lengths
    prod = Y[:, 0] * Y[:, 1]
    se = prod.std(ddof=1) / np.sqrt(prod.size)
    assert abs(prod.mean() - mph_cross_moment(sfs_rep(model4), 0, 1)) < 3 * se


def test_joint_pgf_normalised(model4):
    assert mph_joint_pgf(sfs_rep(model4), 0.5, np.ones(3)) == pytest.approx(1.0)


def test_joint_pgf_common_argument(model4):
    rep = sfs_rep(model4)
    d = poisson_mix(reward_transform(rep.base, rep.R.sum(axis=1)), 0.5)
    for z in (0.2, 0.5, 0.9, -0.3):
        assert mph_joint_pgf(rep, 0.5, [z] * 3).real == pytest.approx(d.pgf(z), abs=1e-12)


def test_joint_pgf_one_free_coordinate(model5, rng):
    rep = sfs_rep(model5)
    lam = 0.5
    for j in range(rep.dim):
        d = poisson_marginal(rep, lam, j)
        for _ in range(20):
            z = rng.uniform(-1, 1)
            args = np.ones(rep.dim)
            args[j] = z
            assert mph_joint_pgf(rep, lam, args).real == pytest.approx(d.pgf(z), abs=1e-10)


def test_joint_pgf_outside_disc(model4):
    with pytest.raises(ValueError):
        mph_joint_pgf(sfs_rep(model4), 0.5, [1.5, 1, 1])


def test_geometric_variance_n2():
    rep = MphRep([1.0], [[-1.0]], [[2.0]])
    assert poisson_covariance(rep, 0.5)[0, 0] == pytest.approx(2.0)


def test_covariance_limits_and_overdispersion(model5):
    rep = sfs_rep(model5)
    lam = 1e-9
    np.testing.assert_allclose(poisson_covariance(rep, lam) / lam, np.diag(mph_mean(rep)), rtol=1e-6, atol=1e-8)
    V = poisson_covariance(rep, 2.0)
    assert np.all(np.diag(V) >= 2.0 * mph_mean(rep) - 1e-12)
    np.testing.assert_allclose(V, V.T, atol=1e-13)


def test_poisson_covariance_diagonal_matches_dph(model5):
    rep = sfs_rep(model5)
    lam = 0.5
    V = poisson_covariance(rep, lam)
    for j in range(rep.dim):
        d = poisson_marginal(rep, lam, j)
        var = dph_factorial2(d) + dph_mean(d) - dph_mean(d) ** 2
        assert V[j, j] == pytest.approx(var, rel=1e-9)


def test_independent_coordinates():
    # time in phase 1 feeds Y_1, time in phase 2 feeds Y_2; the two are independent
    a, b, lam = 2.0, 0.5, 0.7
    rep = MphRep([1.0, 0.0], [[-a, a], [0.0, -b]], [[1.0, 0.0], [0.0, 1.0]])
    assert poisson_cross_moment(rep, lam, 0, 1) == pytest.approx(lam ** 2 / (a * b))


def test_cross_moment_finite_difference(model4):
    rep = sfs_rep(model4)
    lam, h = 0.5, 1e-4

    def G(z1, z2):
        return mph_joint_pgf(rep, lam, [z1, z2, 1.0]).real

    mixed = (G(1, 1) - G(1 - h, 1) - G(1, 1 - h) + G(1 - h, 1 - h)) / h ** 2
    assert mixed == pytest.approx(poisson_cross_moment(rep, lam, 0, 1), rel=1e-3)


def test_cross_moment_of_counts_against_simulation(model4):
    sample = simulate_sfs(SimConfig(4, 1.0, 1_000_000, seed=12), model4)
    prod = sample.sfs[:, 0] * sample.sfs[:, 1]
    se = prod.std(ddof=1) / np.sqrt(prod.size)
    assert abs(prod.mean() - poisson_cross_moment(sfs_rep(model4), 0.5, 0, 1)) < 3 * se


def test_diagonal_cross_moment_rejected(model4):
    with pytest.raises(ValueError):
        poisson_cross_moment(sfs_rep(model4), 0.5, 1, 1)
