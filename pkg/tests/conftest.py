import numpy as np
import pytest

from ainfo.core import Channel, Distribution
from ainfo.io import bundled_channel


def bsc(eps: float) -> Channel:
    return Channel(np.array([[1 - eps, eps], [eps, 1 - eps]]))


def useless(nx: int, ny: int, seed: int = 0) -> Channel:
    row = np.random.default_rng(seed).uniform(size=ny)
    return Channel.from_weights(np.tile(row, (nx, 1)))


def rand_channel(rng, nx, ny) -> Channel:
    return Channel.from_weights(rng.uniform(size=(nx, ny)))


def rand_dist(rng, n) -> Distribution:
    return Distribution.from_weights(rng.dirichlet(np.ones(n)))


@pytest.fixture
def bench_ch() -> Channel:
    return bundled_channel()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
