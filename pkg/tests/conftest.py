from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unit(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)
