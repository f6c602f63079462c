import numpy as np
import pytest

from fockalg.operators import FreeSeries
from fockalg.words import Word, enumerate_words


def random_series(rng, n, degree, terms):
    """Random sparse series with the given alphabet and degree bound."""
    pool = [w for k in range(degree + 1) for w in enumerate_words(n, k)]
    picks = rng.choice(len(pool), size=min(terms, len(pool)), replace=False)
    coeffs = {}
    for i in picks:
        coeffs[pool[i]] = complex(rng.standard_normal(), rng.standard_normal())
    return FreeSeries.make(n, coeffs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
