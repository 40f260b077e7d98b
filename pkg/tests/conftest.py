import random

import pytest

from chromacert.graphs import Graph
from chromacert.smallgraphs import bipartite_graphs_upto, connected_graphs_upto


@pytest.fixture(scope="session")
def connected_upto_6():
    return connected_graphs_upto(6)


@pytest.fixture(scope="session")
def connected_upto_7():
    return connected_graphs_upto(7)


@pytest.fixture(scope="session")
def bipartite_upto_8():
    return bipartite_graphs_upto(8)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_bipartite(rng: random.Random, n: int, p: float) -> Graph:
    split = rng.randrange(1, n) if n > 1 else 0
    edges = [
        (i, j)
        for i in range(split)
        for j in range(split, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def random_lists(rng: random.Random, n: int, min_size=1, max_size=3, universe=5):
    from chromacert.coloring import ListAssignment

    return ListAssignment(
        {
            v: rng.sample(range(1, universe + 1), rng.randint(min_size, max_size))
            for v in range(n)
        }
    )
