import pytest

from reverseconv.core.rng import SplitMix64


@pytest.fixture
def rng():
    return SplitMix64(20240607)
