import math

import numpy as np
import pytest

from fracline import families
from fracline.spectral_core import build_grid


@pytest.fixture(scope="session")
def grid():
    return build_grid(4096, 16.0)


@pytest.fixture(scope="session")
def small_grid():
    return build_grid(512, 8.0)


@pytest.fixture(scope="session")
def gauss(grid):
    return families.sample(grid, families.Gaussian())


@pytest.fixture(scope="session")
def hermite(grid):
    return families.sample(grid, families.HermiteGaussian(1, math.pi))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
