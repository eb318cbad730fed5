import numpy as np
import pytest

from exorder.distributions import (NIG, Exponential, Laplace, Logistic, Lomax,
                                   Normal, StudentT, Uniform)

# families with a finite mean, one representative each
FINITE_MEAN_MODELS = [
    Normal(0.0, 1.0),
    Normal(2.0, 0.5),
    StudentT(5.0),
    StudentT(3.0),
    Lomax(3.0, np.sqrt(3.0)),
    Lomax(2.0, 1.0),
    NIG.standardized(2.0, 1.0),
    Logistic(0.0, 1.0),
    Laplace(1.0, 2.0),
    Uniform(0.0, 1.0),
    Exponential(1.0),
]

SYMMETRIC_MODELS = [
    Normal(0.0, 1.0),
    StudentT(5.0),
    Logistic(0.5, 2.0),
    Laplace(-1.0, 0.7),
    Uniform(-2.0, 4.0),
    NIG.standardized(2.0, 0.0),
]


def model_id(model):
    return model.spec


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1234)
