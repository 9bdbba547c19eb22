import numpy as np
import pytest


def bounded_coeffs(rng, length, sigma=1.0, offset=0):
    """Random complex c_j with |c_j| <= (j+offset+2)^(-1-sigma)."""
    j = np.arange(length) + offset
    mod = (j + 2.0) ** (-1.0 - sigma) * rng.uniform(0, 1, length)
    return mod * np.exp(2j * np.pi * rng.uniform(0, 1, length))


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)
