import pytest

from idealtop import build_space, principal


@pytest.fixture
def s2():
    return build_space(2, ("a", "b"), [0b00, 0b01, 0b11])


@pytest.fixture
def indiscrete2():
    return build_space(2, ("a", "b"), [0b00, 0b11])


@pytest.fixture
def s2_ideal():
    return principal(2, 0b01)
