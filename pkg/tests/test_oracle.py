import numpy as np
import pytest

from graphchar.cli import oracle_diff
from graphchar.generators import clique_star
from graphchar.graph import LabeledGraph
from graphchar.oracle import ORACLE_MEASURES, oracle_values
from graphchar.properties import builtin_suite

from conftest import random_small_graph


def test_oracle_covers_every_measure():
    assert set(oracle_values(clique_star(3))) == set(ORACLE_MEASURES)


def test_oracle_undefined_on_edgeless_graph():
    vals = oracle_values(LabeledGraph.from_edges([], [0, 1]))
    assert all(v is None for v in vals.values())


def test_fast_paths_match_oracle_on_random_graphs():
    rng = np.random.default_rng(2024)
    for _ in range(60):
        g = random_small_graph(rng)
        bad = {k: d for k, d in oracle_diff(g).items() if not d["ok"]}
        assert not bad, (g.to_dict(), bad)


@pytest.mark.parametrize("g", builtin_suite().all(), ids=lambda g: f"n{g.num_nodes}e{g.num_edges}c{g.num_classes}")
def test_fast_paths_match_oracle_on_suite(g):
    assert all(d["ok"] for d in oracle_diff(g).values())


def test_planted_bug_is_detected(monkeypatch):
    from graphchar import homophily as hm

    monkeypatch.setattr(hm, "edge_homophily", lambda m: 0.5 * hm._matrix(m).trace / hm._matrix(m).total)
    diffs = oracle_diff(clique_star(4))
    assert not diffs["h_edge"]["ok"]
    assert diffs["h_adj"]["ok"]
