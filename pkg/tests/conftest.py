import random

import pytest

from movnet import randgen


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def small_instances():
    return [randgen.random_instance(100 + i, max_nodes=7, seeded=True)
            for i in range(25)]
