import numpy as np
import pytest
from hypothesis import strategies as st


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def logit_vectors(min_size=2, max_size=12, bound=30.0):
    return st.lists(
        st.floats(-bound, bound, allow_nan=False, allow_infinity=False),
        min_size=min_size,
        max_size=max_size,
    ).map(np.array)


def simplex_points(min_size=2, max_size=12):
    """Strictly positive simplex points built from normalized positive weights."""
    return st.lists(st.floats(1e-3, 1.0), min_size=min_size, max_size=max_size).map(
        lambda w: np.array(w) / np.sum(w)
    )
