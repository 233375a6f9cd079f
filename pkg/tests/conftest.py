import hypothesis
import numpy as np
import pytest

from ringcross.genome import make_rng
from ringcross.types import GaConfig

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.load_profile("ci")


@pytest.fixture
def rng():
    return make_rng(12345)


@pytest.fixture
def small_config() -> GaConfig:
    """A configuration cheap enough for many runs per test."""
    return GaConfig(population_size=10, dimension=5, eval_budget=300, seed=3)


@pytest.fixture
def symbols4():
    """Parents [a,b,c,d] and [e,f,g,h] encoded as distinct integers 1..8."""
    return np.arange(1, 5), np.arange(5, 9)
