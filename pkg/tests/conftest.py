import numpy as np
import pytest

from gl3bethe.monodromy import ChainModel
from gl3bethe.rational import draw_points

# reference configuration used throughout the tests
KAPPA = 0.4 + 0.1j
BETA = 0.7 - 0.2j
C = 1.0 + 0.0j


def make_model(length: int, seed: int, **kw) -> ChainModel:
    xi = draw_points(np.random.default_rng(seed), length, kw.get("c", C))
    params = dict(kappa=KAPPA, beta=BETA, c=C)
    params.update(kw)
    return ChainModel(length, xi, **params)


@pytest.fixture(scope="session")
def model1():
    return make_model(1, seed=101)


@pytest.fixture(scope="session")
def model2():
    return make_model(2, seed=102)


@pytest.fixture(scope="session")
def model3():
    return make_model(3, seed=103)
