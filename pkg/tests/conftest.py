import numpy as np
import pytest

import thermoshift as ts


@pytest.fixture
def full2():
    return ts.full_shift(2)


@pytest.fixture
def golden():
    return ts.golden_mean_shift()


@pytest.fixture
def full3():
    return ts.full_shift(3)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
