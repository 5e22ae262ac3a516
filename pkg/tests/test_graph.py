import numpy as np
import pytest

from graphchar.graph import (
    ClassAdjacencyMatrix,
    ClassDistribution,
    LabeledGraph,
    build_class_adjacency,
    degree_weighted_distribution,
    joint_edge_distribution,
    label_distribution,
    matrix_instance,
)


def test_edges_are_canonical_and_order_independent():
    a = LabeledGraph.from_edges([(2, 0), (1, 0), (2, 1)], [0, 1, 1])
    b = LabeledGraph.from_edges([(0, 1), (1, 2), (0, 2)], [0, 1, 1])
    assert a == b
    assert hash(a) == hash(b)
    assert a.edges.tolist() == [[0, 1], [0, 2], [1, 2]]
    assert not a.edges.flags.writeable


def test_validation_errors():
    with pytest.raises(ValueError):
        LabeledGraph.from_edges([(0, 0)], [0])
    with pytest.raises(ValueError):
        LabeledGraph.from_edges([(0, 3)], [0, 1])
    with pytest.raises(ValueError):
        LabeledGraph.from_edges([(0, 1)], [0, 5], num_classes=2)
    with pytest.raises(ValueError):
        LabeledGraph.from_edges([(0, 1)], [0, -1])


def test_degrees_and_class_sizes(triangle):
    assert triangle.degrees.tolist() == [2, 2, 2]
    assert triangle.class_sizes.tolist() == [2, 1]
    prof = triangle.degree_profile()
    assert prof.class_degrees.tolist() == [4, 2]


def test_class_adjacency_counts_ordered_pairs(triangle):
    m = build_class_adjacency(triangle)
    assert m.counts.tolist() == [[2, 2], [2, 0]]
    assert m.total == 2 * triangle.num_edges
    assert m.trace == 2
    assert m.row_sums.tolist() == [4, 2]


def test_parallel_edges_count_with_multiplicity():
    g = LabeledGraph.from_edges([(0, 1), (0, 1), (1, 2)], [0, 0, 1])
    assert g.num_edges == 3
    assert build_class_adjacency(g).counts.tolist() == [[4, 1], [1, 0]]


def test_distributions(triangle):
    assert label_distribution(triangle).tolist() == pytest.approx([2 / 3, 1 / 3])
    assert degree_weighted_distribution(triangle).tolist() == pytest.approx([2 / 3, 1 / 3])
    joint = joint_edge_distribution(triangle)
    assert joint.sum() == pytest.approx(1.0)
    assert np.allclose(joint, joint.T)
    with pytest.raises(ValueError):
        ClassDistribution(np.array([0.5, 0.4]))


def test_empty_classes_and_relabel(triangle):
    g = triangle.with_empty_classes(2)
    assert g.num_classes == 4
    assert build_class_adjacency(g).counts.shape == (4, 4)
    swapped = triangle.relabeled([1, 0])
    assert swapped.labels.tolist() == [1, 1, 0]


def test_perfect_checks(triangle):
    assert not triangle.is_perfectly_homophilous()
    assert not triangle.is_perfectly_heterophilous()
    assert LabeledGraph.from_edges([(0, 1)], [0, 0]).is_perfectly_homophilous()
    assert LabeledGraph.from_edges([(0, 1)], [0, 1]).is_perfectly_heterophilous()


def test_matrix_instance_validation():
    with pytest.raises(ValueError):
        matrix_instance([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        matrix_instance([[0, -1], [-1, 0]])
    m = matrix_instance([[2, 1], [1, 0]])
    assert m.add_intra_edge(1).counts.tolist() == [[2, 1], [1, 2]]
    assert m.add_inter_edge(0, 1).counts.tolist() == [[2, 2], [2, 0]]
    assert m.with_empty_classes(1).counts.shape == (3, 3)


def test_serialization_round_trip(triangle):
    assert LabeledGraph.from_dict(triangle.to_dict()) == triangle
    m = build_class_adjacency(triangle)
    assert ClassAdjacencyMatrix.from_dict(m.to_dict()) == m
