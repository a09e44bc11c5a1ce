import random
from itertools import combinations

import pytest

from fourpaths.graphs import Graph


def all_graphs(n):
    """Every labeled graph on n vertices."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for e in range(len(pairs) + 1):
        for subset in combinations(pairs, e):
            yield Graph(n, subset)


def random_graphs(count, n_lo, n_hi, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_lo, n_hi)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        e = rng.randint(0, len(pairs))
        yield Graph(n, rng.sample(pairs, e)), rng


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
