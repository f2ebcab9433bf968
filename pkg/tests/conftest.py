import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

finite = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)


def vectors(n, nonzero=True):
    s = st.lists(finite, min_size=n, max_size=n).map(np.array)
    if nonzero:
        s = s.filter(lambda v: np.linalg.norm(v) > 1e-3)
    return s


def units(n):
    return vectors(n).map(lambda v: v / np.linalg.norm(v))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
