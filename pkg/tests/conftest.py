import math

import numpy as np
import pytest

from renyi_uncertainty import GridSpec, make_gaussian, make_hermite_superposition

# grid wide enough for degree-8 Hermite functions and sigma up to ~1.4
TEST_GRID = GridSpec(-20.0, 20.0, 4096)


def random_hermite(rng, max_degree=8, grid=TEST_GRID):
    deg = int(rng.integers(0, max_degree + 1))
    c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    return make_hermite_superposition(c / np.linalg.norm(c), grid)


def random_gaussian(rng, grid=TEST_GRID):
    return make_gaussian(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.4, 1.3), grid)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def minimal_gaussian():
    return make_gaussian(0.0, 0.0, 1 / math.sqrt(2))
