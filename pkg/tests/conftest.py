import numpy as np
import pytest


@pytest.fixture
def rng():
    # one seed for the whole suite keeps failures reproducible verbatim
    return np.random.default_rng(20260823)
