import numpy as np
import pytest
from scipy import stats

from phasesfs.phasetype import pmf_table
from phasesfs.sfs import segregating_sites_law, sfs_covariance, sfs_model
from phasesfs.simulate import CHUNK_SIZE, SimConfig, iter_sfs, simulate_sfs, simulate_statistic


def covariance_se(X):
    """Sample covariance and the standard error of each entry."""
    D = X - X.mean(axis=0)
    prods = D[:, :, None] * D[:, None, :]
    return prods.mean(axis=0), prods.std(axis=0, ddof=1) / np.sqrt(X.shape[0])


def test_n2_mean():
    theta = 1.5
    x = simulate_sfs(SimConfig(2, theta, 100_000, seed=1)).sfs[:, 0]
    assert abs(x.mean() - theta) < 3 * x.std(ddof=1) / np.sqrt(x.size)


def test_n2_branch_length_is_twice_exponential():
    s = simulate_sfs(SimConfig(2, 1.0, 50_000, seed=2), keep_branch_lengths=True)
    np.testing.assert_allclose(s.branch_lengths[:, 0], 2 * s.tmrca)
    assert stats.kstest(s.tmrca, "expon").pvalue > 0.001


@pytest.mark.parametrize("n", [4, 7])
def test_means(n):
    theta = 2.0
    sfs = simulate_sfs(SimConfig(n, theta, 100_000, seed=n)).sfs
    se = sfs.std(axis=0, ddof=1) / np.sqrt(sfs.shape[0])
    assert np.all(np.abs(sfs.mean(axis=0) - theta / np.arange(1, n)) < 3 * se)


@pytest.mark.slow
def test_covariance_n4():
    sm = sfs_model(4, 1.0)
    sfs = simulate_sfs(SimConfig(4, 1.0, 1_000_000, seed=9), sm.model).sfs.astype(float)
    cov, se = covariance_se(sfs)
    assert np.all(np.abs(cov - sfs_covariance(sm)) < 3 * se)


def test_zero_coefficients():
    x = simulate_statistic(SimConfig(5, 1.0, 1000, seed=0), np.zeros(4))
    assert np.all(x == 0)


def test_segregating_sites_chi_square():
    sm = sfs_model(4, 1.0)
    N = 100_000
    x = simulate_statistic(SimConfig(4, 1.0, N, seed=4), np.ones(3)).astype(int)
    probs = pmf_table(segregating_sites_law(sm), 14)
    observed = np.bincount(np.minimum(x, 15), minlength=16)
    expected = N * np.append(probs, 1 - probs.sum())
    assert stats.chisquare(observed, expected).pvalue > 0.001


def test_determinism_and_chunking():
    cfg = SimConfig(5, 1.0, CHUNK_SIZE + 1000, seed=123)
    a = simulate_sfs(cfg).sfs
    b = simulate_sfs(cfg, workers=3).sfs
    np.testing.assert_array_equal(a, b)
    chunks = list(iter_sfs(cfg))
    assert [c.sfs.shape[0] for c in chunks] == [CHUNK_SIZE, 1000]
    np.testing.assert_array_equal(np.concatenate([c.sfs for c in chunks]), a)
    other = simulate_sfs(SimConfig(5, 1.0, 1000, seed=124)).sfs
    assert not np.array_equal(other, a[:1000])


def test_tmrca_mean():
    n = 6
    s = simulate_sfs(SimConfig(n, 1.0, 100_000, seed=6), keep_branch_lengths=True)
    se = s.tmrca.std(ddof=1) / np.sqrt(s.tmrca.size)
    assert abs(s.tmrca.mean() - 2 * (1 - 1 / n)) < 3 * se
    # every lineage present contributes: total length is sum_k k T_k >= 2 T_MRCA
    assert np.all(s.branch_lengths @ np.arange(1, n) >= 2 * s.tmrca - 1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(4, 1.0, 0)
    with pytest.raises(ValueError):
        SimConfig(4, -1.0, 10)
    with pytest.raises(ValueError):
        simulate_statistic(SimConfig(4, 1.0, 10), [1.0, 2.0])
