import numpy as np
import pytest
from hypothesis import strategies as st

from reliable_fd.data import Labeling


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@st.composite
def labelings(draw, n=None, max_n=12, max_domain=4):
    """Pairs of equal-length code lists, optionally of fixed length."""
    if n is None:
        n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_domain))
    return draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))


@st.composite
def labeling_pairs(draw, max_n=12, max_domain=4):
    n = draw(st.integers(1, max_n))
    x = draw(labelings(n=n, max_domain=max_domain))
    y = draw(labelings(n=n, max_domain=max_domain))
    return Labeling.from_codes(x), Labeling.from_codes(y)
