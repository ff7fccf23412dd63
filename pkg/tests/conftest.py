import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def mc_band(sample, target, n_sigma=3.0):
    """True if the sample mean is within n_sigma standard errors of target."""
    sample = np.asarray(sample, dtype=float)
    se = sample.std(ddof=1) / np.sqrt(sample.size)
    return abs(sample.mean() - target) <= n_sigma * max(se, 1e-15)
