import pytest

from mfg.shift import full_shift, golden_mean


@pytest.fixture
def A2():
    return full_shift(2)


@pytest.fixture
def F():
    return golden_mean()
