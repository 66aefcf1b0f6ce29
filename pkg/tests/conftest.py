import os

import pytest
from hypothesis import HealthCheck, settings

from milnor_descent.algebra import nodal_square, sq1_square, sq2_square
from milnor_descent.linalg import GF, QQ

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F5 = GF(5)


@pytest.fixture(scope="session")
def sq1():
    return sq1_square()


@pytest.fixture(scope="session")
def sq2():
    return sq2_square()


@pytest.fixture(scope="session")
def nodal():
    return nodal_square()


@pytest.fixture(scope="session")
def nodal_f5():
    return nodal_square(F5)


@pytest.fixture(params=[QQ, F5], ids=["Q", "F5"])
def field(request):
    return request.param
