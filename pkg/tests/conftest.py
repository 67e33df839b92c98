import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from symineq.partitions import Partition


@pytest.fixture
def rng():
    return random.Random(12345)


def rationals(bound=100, nonnegative=True):
    lo = 0 if nonnegative else -bound
    return st.builds(Fraction, st.integers(lo, bound), st.integers(1, bound))


def points(n_min=1, n_max=4, nonnegative=True):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(rationals(nonnegative=nonnegative), min_size=n, max_size=n)
    )


def P(text):
    return Partition.parse(text)
