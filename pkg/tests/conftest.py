import pytest

from excoll import build_fan


@pytest.fixture(scope="session")
def fan3():
    return build_fan(3)


@pytest.fixture(scope="session")
def fan4():
    return build_fan(4)


@pytest.fixture(scope="session")
def fan5():
    return build_fan(5)
