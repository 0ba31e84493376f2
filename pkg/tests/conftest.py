import pytest

from rrlab.numerics import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(256, 32)


@pytest.fixture(scope="session")
def ctx512():
    return PrecisionContext(512, 32)


@pytest.fixture(scope="session")
def ctx128():
    return PrecisionContext(128, 32)
