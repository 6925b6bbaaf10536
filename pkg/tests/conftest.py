import numpy as np
import pytest

import clarklab as cl


@pytest.fixture(scope="session")
def z2_data():
    return cl.clark_data(cl.monomial(2), 0.0, cl.Arc.full_circle())


@pytest.fixture(scope="session")
def z4_data():
    return cl.clark_data(cl.monomial(4), 0.0, cl.Arc.full_circle())


@pytest.fixture(scope="session")
def exp_u():
    return cl.SingularAtomic(atoms=((0.0, 1.0),))


@pytest.fixture(scope="session")
def exp_data_100():
    return cl.exp_clark_data(100)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)
