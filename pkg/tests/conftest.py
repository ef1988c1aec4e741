import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ginv.generators import GenSpec, generate

settings.register_profile("ginv", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ginv")


def gen(family, dims, seed=0, **params):
    return generate(GenSpec(family, dims, params, seed))


def rand_complex(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# Worked pairs used across modules
EX31 = (np.array([[1, 1], [0, 0]], dtype=complex), np.array([[0, 0], [1, 0]], dtype=complex))
EX32 = (np.eye(2, dtype=complex), np.diag([-1, 0]).astype(complex))
