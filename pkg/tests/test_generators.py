import numpy as np
import pytest

from graphchar import homophily as hm
from graphchar.generators import (
    BaselineSetting,
    ConfigModelSpec,
    SbmFourClassConfig,
    _decode_triangular,
    clique_star,
    configuration_model,
    configuration_model_stats,
    make_rng,
    sbm_four_class,
    sbm_four_class_probabilities,
    shuffle_labels,
    trial_seeds,
    two_class_degree_imbalanced,
)
from graphchar.graph import LabeledGraph


def test_rng_is_reproducible():
    assert make_rng(7).integers(0, 1 << 62, size=4).tolist() == make_rng(7).integers(0, 1 << 62, size=4).tolist()
    a, b = trial_seeds(3, 2)
    assert make_rng(a).random() != make_rng(b).random()


@pytest.mark.parametrize("r", [2, 4, 10])
def test_clique_star_shape(r):
    g = clique_star(r)
    assert g.num_nodes == r * r
    assert g.num_edges == r * (r - 1) // 2 + r * (r - 1)
    assert g.class_sizes.tolist() == [r, r * (r - 1)]


def test_clique_star_rejects_small_r():
    with pytest.raises(ValueError):
        clique_star(1)


def test_configuration_model_preserves_degrees_up_to_erased_loops():
    rng = np.random.default_rng(1)
    deg = rng.poisson(8, size=1000)
    deg[0] += deg.sum() % 2
    g, stats = configuration_model_stats(ConfigModelSpec(deg, np.arange(1000) % 3, seed=5))
    lost = deg - g.degrees
    assert np.all(lost >= 0) and np.all(lost % 2 == 0)
    assert lost.sum() == 2 * stats["erased_loops"]
    assert stats["erased_loops"] / (stats["stubs"] / 2) <= 0.01


def test_configuration_model_is_deterministic():
    spec = ConfigModelSpec([3, 3, 2, 2, 2, 2], [0, 1, 0, 1, 0, 1], seed=11)
    assert configuration_model(spec) == configuration_model(spec)


def test_configuration_model_rejects_odd_degree_sum():
    with pytest.raises(ValueError):
        ConfigModelSpec([1, 1, 1], [0, 0, 0])


def test_triangular_decode_is_a_bijection():
    m = 200
    i, j = _decode_triangular(np.arange(m * (m - 1) // 2))
    assert np.all(i < j) and np.all(j < m)
    assert len(set(zip(i.tolist(), j.tolist()))) == m * (m - 1) // 2


def test_sbm_probability_pattern():
    cfg = SbmFourClassConfig(400, 0.5, 0.3, 0.1, expected_degree=10)
    probs = sbm_four_class_probabilities(cfg)
    k = 10 / 100
    assert probs[0, 0] == pytest.approx(0.5 * k)
    assert probs[0, 3] == probs[1, 2] == pytest.approx(0.3 * k)
    assert probs[0, 1] == probs[0, 2] == pytest.approx(0.1 * k)
    assert np.allclose(probs, probs.T)


def test_sbm_validation():
    with pytest.raises(ValueError):
        SbmFourClassConfig(10, 1, 0, 0)
    with pytest.raises(ValueError):
        SbmFourClassConfig(400, 0.5, 0.5, 0.5)


def test_sbm_mean_degree_close_to_expected():
    means = []
    for seed in range(20):
        g = sbm_four_class(SbmFourClassConfig(4000, 0.4, 0.2, 0.2, expected_degree=10, seed=seed))
        assert g.num_nodes == 4000 and g.class_sizes.tolist() == [1000] * 4
        means.append(2 * g.num_edges / g.num_nodes)
    assert abs(np.mean(means) - 10) / 10 < 0.05


def test_sbm_pure_homophily_has_no_cross_edges():
    g = sbm_four_class(SbmFourClassConfig(400, 1.0, 0.0, 0.0, seed=3))
    assert g.is_perfectly_homophilous()
    h = sbm_four_class(SbmFourClassConfig(400, 0.0, 1.0, 0.0, seed=3))
    y = h.labels
    assert np.all(y[h.edges[:, 0]] + y[h.edges[:, 1]] == 3)


def test_degree_imbalanced_structure():
    g = two_class_degree_imbalanced(100, 4, 4, seed=2)
    assert g.num_nodes == 200 and g.num_classes == 2
    assert g.num_edges <= (100 * 4 + 100 * 16) // 2
    with pytest.raises(ValueError):
        two_class_degree_imbalanced(3, 1, 2)
    with pytest.raises(ValueError):
        two_class_degree_imbalanced(4, 2, 1)


def test_shuffle_labels_preserves_class_sizes_and_edges():
    g = clique_star(5)
    s = shuffle_labels(g, seed=4)
    assert s.class_sizes.tolist() == g.class_sizes.tolist()
    assert np.array_equal(s.edges, g.edges)
    single = LabeledGraph.from_edges([(0, 1), (1, 2)], [0, 0, 0])
    assert shuffle_labels(single, seed=1) == single


def test_shuffled_labels_are_near_chance():
    g = sbm_four_class(SbmFourClassConfig(2000, 0.9, 0.05, 0.025, seed=0))
    vals = [hm.adjusted_homophily(shuffle_labels(g, seed=s)) for s in range(20)]
    assert abs(np.mean(vals)) < 0.02


@pytest.mark.parametrize("name", ["balanced", "imbalanced", "degree-imbalanced"])
def test_baseline_settings(name):
    g = BaselineSetting(name).sample(1000, np.random.SeedSequence(9))
    assert g.num_nodes == 1000
    mean_degree = 2 * g.num_edges / g.num_nodes
    assert 8.5 < mean_degree < 11.0
    if name == "imbalanced":
        assert g.class_sizes.tolist() == [900, 100]
    with pytest.raises(ValueError):
        BaselineSetting("nope")
