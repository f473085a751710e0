import math

import numpy as np
import pytest

from genfreq import signals

V_EX = 12e3
OMEGA0 = 120.0 * math.pi


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_orthogonal(rng, dim: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


@pytest.fixture
def orthogonal(rng):
    return lambda dim: random_orthogonal(rng, dim)


@pytest.fixture
def example1():
    return signals.single_phase(V_EX, OMEGA0)


@pytest.fixture
def example2():
    return signals.three_phase_balanced(V_EX, OMEGA0)


@pytest.fixture
def example3_dq():
    return signals.damped_dq_transient(1e3, OMEGA0)


@pytest.fixture
def sampled_example1(example1):
    return signals.sample(example1, 10_000.0, 0.0, 0.1)


@pytest.fixture
def sampled_example2(example2):
    return signals.sample(example2, 10_000.0, 0.0, 0.1)
