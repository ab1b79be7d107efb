import os
import random

import pytest

# HAMFAM_SEED pins every randomized (non-hypothesis) test for reproducibility.
SEED = int(os.environ.get("HAMFAM_SEED", "20240811"))


@pytest.fixture
def rng():
    return random.Random(SEED)
