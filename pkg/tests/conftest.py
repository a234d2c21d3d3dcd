import numpy as np
import pytest

from phasesfs.blockcounting import build_model
from phasesfs.sfs import sfs_model


@pytest.fixture(scope="session")
def model4():
    return build_model(4)


@pytest.fixture(scope="session")
def model5():
    return build_model(5)


@pytest.fixture(scope="session")
def sm4():
    return sfs_model(4, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_subintensity(rng, p):
    """Random sub-intensity matrix with some exit mass in every row."""
    S = rng.exponential(1.0, size=(p, p))
    np.fill_diagonal(S, 0.0)
    exit_rates = rng.exponential(0.5, size=p) + 0.05
    np.fill_diagonal(S, -(S.sum(axis=1) + exit_rates))
    return S
