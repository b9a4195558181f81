import numpy as np
import pytest

from qaoa_landscape.core import TargetSpace


def random_space(rng: np.random.Generator, n: int, size: int | None = None) -> TargetSpace:
    if size is None:
        size = int(rng.integers(1, (1 << n) + 1))
    states = rng.choice(1 << n, size=size, replace=False)
    return TargetSpace.from_iterable(n, states)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
