import random
from itertools import combinations

import pytest

from tfhardcore.graph_core import complete_graph, cycle_graph, from_edge_list, petersen_graph


def random_graph(n, p, rng):
    """G(n, p) from the stdlib generator; kept apart from the package's own sampler."""
    return from_edge_list(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def seeded_random_graphs(count, n_lo, n_hi, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(n_lo, n_hi)
        out.append(random_graph(n, rng.uniform(0.05, 0.6), rng))
    return out


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def k3():
    return complete_graph(3)
