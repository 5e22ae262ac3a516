from fractions import Fraction

import numpy as np
import pytest

from graphchar import homophily as hm
from graphchar.generators import clique_star, monotonicity_counterexample
from graphchar.graph import LabeledGraph, build_class_adjacency, matrix_instance


def test_clique_star_four():
    g = clique_star(4)
    p = hm.profile(g)
    assert p.h_edge == pytest.approx(1 / 3, abs=1e-15)
    assert p.h_node == pytest.approx(0.125, abs=1e-15)
    assert p.h_class == pytest.approx(0.25, abs=1e-15)
    assert p.h_adj == pytest.approx(-0.5, abs=1e-15)
    assert p.h_mod == pytest.approx(-2 / 9, abs=1e-15)
    assert p.h_bal == pytest.approx(0.25, abs=1e-15)
    assert p.h_bal_adj == pytest.approx(-0.5, abs=1e-15)


@pytest.mark.parametrize("r", range(2, 13))
def test_class_homophily_of_clique_star(r):
    assert abs(hm.class_homophily(clique_star(r)) - float(Fraction(1, 2) - Fraction(1, r))) < 1e-12


def test_edgeless_graph_is_undefined_everywhere():
    g = LabeledGraph.from_edges([], [0, 1, 1])
    p = hm.profile(g)
    assert all(v is None for v in p.values().values())
    assert set(p.flags) == set(hm.MEASURE_NAMES)
    with pytest.raises(hm.MeasureUndefinedError):
        hm.edge_homophily(g)


def test_adjusted_degenerate_case():
    m = matrix_instance([[4, 0], [0, 0]])
    assert hm.adjusted_homophily_is_degenerate(m)
    assert hm.adjusted_homophily(m) == 1.0
    with pytest.raises(hm.MeasureUndefinedError):
        hm.adjusted_homophily(m, strict=True)
    p = hm.profile(LabeledGraph.from_edges([(0, 1), (1, 2)], [0, 0, 0, 1]))
    assert p.h_adj == 1.0 and "degenerate" in p.flags["h_adj"]


def test_adjusted_can_be_negative_while_edge_homophily_is_high():
    # binary, imbalanced: most edges are majority-majority yet fewer than chance
    m = matrix_instance([[120, 40], [40, 0]])
    assert hm.edge_homophily(m) == pytest.approx(0.6)
    assert hm.adjusted_homophily(m) == pytest.approx(-0.25)


def test_modularity_is_adjusted_numerator():
    m = matrix_instance([[6, 3, 1], [3, 2, 0], [1, 0, 4]])
    total = m.total
    s = float(np.sum((m.row_sums / total) ** 2))
    assert hm.modularity(m) == pytest.approx(hm.edge_homophily(m) - s)
    assert hm.adjusted_homophily(m) == pytest.approx((hm.edge_homophily(m) - s) / (1 - s))


def test_balanced_measures_count_empty_classes():
    m = matrix_instance([[2, 1], [1, 2]])
    assert hm.balanced_homophily(m) == pytest.approx(2 / 3)
    wider = m.with_empty_classes(1)
    assert hm.balanced_homophily(wider) == pytest.approx(4 / 9)
    assert hm.balanced_adjusted_homophily(m) == pytest.approx(1 / 3)
    with pytest.raises(hm.MeasureUndefinedError):
        hm.balanced_adjusted_homophily(matrix_instance([[2]]))


def test_balanced_adjusted_equals_unclipped_class_homophily_when_classes_carry_edges():
    # every nonempty class carries edges and no per-class term is clipped
    g = LabeledGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 2)], [0, 0, 0, 1, 1, 1])
    assert hm.balanced_adjusted_homophily(g) == pytest.approx(hm.class_homophily(g))


def test_class_homophily_needs_two_classes():
    with pytest.raises(hm.MeasureUndefinedError):
        hm.class_homophily(LabeledGraph.from_edges([(0, 1)], [0, 0]))


def test_node_homophily_ignores_isolated_nodes():
    g = LabeledGraph.from_edges([(0, 1), (1, 2)], [0, 0, 1, 1])
    assert hm.node_homophily(g) == pytest.approx((1 + 0.5 + 0) / 3)


def test_graph_and_matrix_inputs_agree(triangle):
    m = build_class_adjacency(triangle)
    for fn in (hm.edge_homophily, hm.adjusted_homophily, hm.modularity,
               hm.balanced_homophily, hm.balanced_adjusted_homophily):
        assert fn(m) == fn(triangle)


@pytest.mark.parametrize("M", [1, 2, 5, 20])
def test_counterexample_values(M):
    m = monotonicity_counterexample(M)
    before = hm.adjusted_homophily(m)
    after = hm.adjusted_homophily(m.add_inter_edge(0, 1))
    assert before == pytest.approx(-M / (M + 2), abs=1e-12)
    assert after == pytest.approx((1 - M) / (M + 5), abs=1e-12)
    assert after > before
