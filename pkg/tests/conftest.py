"""Shared helpers for the test suite."""

import numpy as np
import pytest

from specwave import Graph, build_graph


def random_connected_graph(rng, n, p=0.4):
    """Erdos-Renyi graph forced connected by a random spanning chain."""
    perm = rng.permutation(n)
    edges = {(min(int(perm[i]), int(perm[i + 1])), max(int(perm[i]), int(perm[i + 1])))
             for i in range(n - 1)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((i, j))
    return build_graph(n, sorted(edges))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def path3() -> Graph:
    return build_graph(3, [(0, 1), (1, 2)])
