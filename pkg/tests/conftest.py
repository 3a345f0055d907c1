import os

import numpy as np
import pytest

#: Default seed for randomized property tests; override with NFG_SEED.
DEFAULT_SEED = 20250814


def seed() -> int:
    return int(os.environ.get("NFG_SEED", DEFAULT_SEED))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(seed())
