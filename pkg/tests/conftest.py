import pytest

from boxaffine import shooting


@pytest.fixture(scope="session", autouse=True)
def jit_warmup():
    # compile the Numerov kernel once so timed checks measure the algorithm
    shooting.warmup()
