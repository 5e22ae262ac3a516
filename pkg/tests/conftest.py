import numpy as np
import pytest

from graphchar.graph import LabeledGraph


def random_small_graph(rng: np.random.Generator, max_n: int = 12, max_c: int = 5,
                       multi: bool = True) -> LabeledGraph:
    """Small random labeled graph; may have isolated nodes, unused classes and parallel edges."""
    n = int(rng.integers(2, max_n + 1))
    c = int(rng.integers(1, max_c + 1))
    labels = rng.integers(0, c, size=n)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < rng.uniform(0.1, 0.8)
    edges = np.stack([iu[keep], ju[keep]], axis=1)
    if multi and len(edges) and rng.random() < 0.3:
        extra = edges[rng.integers(0, len(edges), size=int(rng.integers(1, 4)))]
        edges = np.concatenate([edges, extra])
    return LabeledGraph(n, edges, labels, c)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def triangle():
    return LabeledGraph.from_edges([(0, 1), (1, 2), (2, 0)], [0, 0, 1])
