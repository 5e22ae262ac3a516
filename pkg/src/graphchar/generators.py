"""Random and deterministic labeled-graph families.

Randomness comes from numpy's ``Generator`` over the PCG64 bit generator,
seeded through ``SeedSequence``. ``trial_seeds`` spawns independent child
streams so Monte Carlo trials can run in any order (or in parallel) and still
reproduce exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import ClassAdjacencyMatrix, LabeledGraph, matrix_instance

__all__ = [
    "make_rng",
    "trial_seeds",
    "ConfigModelSpec",
    "SbmFourClassConfig",
    "configuration_model",
    "configuration_model_stats",
    "sbm_four_class",
    "sbm_four_class_probabilities",
    "clique_star",
    "two_class_degree_imbalanced",
    "shuffle_labels",
    "matrix_instance",
    "monotonicity_counterexample",
    "poisson_degrees",
    "BASELINE_SETTINGS",
    "BaselineSetting",
]


def make_rng(seed: int | np.random.SeedSequence | None) -> np.random.Generator:
    """PCG64 generator for ``seed``; identical seeds give identical streams on every platform."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def trial_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)


@dataclass(frozen=True)
class ConfigModelSpec:
    degree_sequence: Sequence[int]
    labels: Sequence[int]
    seed: int | np.random.SeedSequence | None = 0
    num_classes: int | None = None

    def __post_init__(self) -> None:
        deg = np.asarray(self.degree_sequence, dtype=np.int64)
        if np.any(deg < 0):
            raise ValueError("degrees must be non-negative")
        if int(deg.sum()) % 2:
            raise ValueError("degree sum must be even")
        if len(deg) != len(self.labels):
            raise ValueError("degree sequence and labels differ in length")


@dataclass
class _StubMatchStats:
    stubs: int = 0
    erased_loops: int = 0


def _stub_match(spec: ConfigModelSpec) -> tuple[LabeledGraph, _StubMatchStats]:
    deg = np.asarray(spec.degree_sequence, dtype=np.int64)
    rng = make_rng(spec.seed)
    stubs = np.repeat(np.arange(len(deg), dtype=np.int64), deg)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    loops = pairs[:, 0] == pairs[:, 1]
    graph = LabeledGraph(
        num_nodes=len(deg),
        edges=pairs[~loops],
        labels=np.asarray(spec.labels, dtype=np.int64),
        num_classes=-1 if spec.num_classes is None else spec.num_classes,
    )
    return graph, _StubMatchStats(stubs=len(stubs), erased_loops=int(loops.sum()))


def configuration_model(spec: ConfigModelSpec) -> LabeledGraph:
    """Uniform random matching of degree stubs, labels attached independently.

    A uniformly shuffled stub list split into consecutive pairs is a uniform
    perfect matching. Pairs joining a node to itself are erased (so a node
    may end up with lower degree than requested); parallel edges are kept.
    """
    return _stub_match(spec)[0]


def configuration_model_stats(spec: ConfigModelSpec) -> tuple[LabeledGraph, dict]:
    graph, stats = _stub_match(spec)
    return graph, {"stubs": stats.stubs, "erased_loops": stats.erased_loops}


@dataclass(frozen=True)
class SbmFourClassConfig:
    """Four balanced classes; block pattern set by ``p0`` (same class),
    ``p1`` (partner class: 0-3 and 1-2) and ``p2`` (the other two classes).

    The edge probability between two nodes is ``p * K`` with
    ``K = expected_degree / (n / 4)``, so every node has expected degree
    ``expected_degree`` up to the missing self-pair.
    """

    n: int
    p0: float
    p1: float
    p2: float
    expected_degree: float = 10.0
    seed: int | np.random.SeedSequence | None = 0

    def __post_init__(self) -> None:
        if self.n <= 0 or self.n % 4:
            raise ValueError("n must be a positive multiple of 4")
        if min(self.p0, self.p1, self.p2) < 0:
            raise ValueError("p0, p1, p2 must be non-negative")
        if abs(self.p0 + self.p1 + 2 * self.p2 - 1) > 1e-9:
            raise ValueError("p0 + p1 + 2*p2 must equal 1")
        if self.expected_degree <= 0:
            raise ValueError("expected_degree must be positive")
        if max(sbm_four_class_probabilities(self).ravel()) > 1:
            raise ValueError("edge probability exceeds 1; lower expected_degree or raise n")

    @property
    def block_size(self) -> int:
        return self.n // 4


def sbm_four_class_probabilities(cfg: SbmFourClassConfig) -> np.ndarray:
    """4x4 per-pair edge probabilities."""
    k = cfg.expected_degree / (cfg.n // 4)
    probs = np.full((4, 4), cfg.p2 * k)
    for i in range(4):
        probs[i, i] = cfg.p0 * k
        probs[i, 3 - i] = cfg.p1 * k
    return probs


def _decode_triangular(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map ``k`` in ``[0, m(m-1)/2)`` to the pair ``(i, j)``, ``i < j``, with ``k = j(j-1)/2 + i``."""
    j = ((1 + np.sqrt(1 + 8 * idx.astype(np.float64))) / 2).astype(np.int64)
    # correct float rounding at the boundaries
    j -= (j * (j - 1) // 2) > idx
    j += ((j + 1) * j // 2) <= idx
    i = idx - j * (j - 1) // 2
    return i, j


def sbm_four_class(cfg: SbmFourClassConfig) -> LabeledGraph:
    """Sample the four-class block model.

    For each block pair the number of edges is drawn from the binomial law
    over that block's node pairs and that many distinct pairs are chosen
    uniformly. Conditional on the count, independent Bernoulli edges form a
    uniformly random subset, so this is exactly the independent-edge model.
    """
    rng = make_rng(cfg.seed)
    l = cfg.block_size
    probs = sbm_four_class_probabilities(cfg)
    chunks = []
    for a in range(4):
        for b in range(a, 4):
            p = probs[a, b]
            n_pairs = l * (l - 1) // 2 if a == b else l * l
            if p == 0 or n_pairs == 0:
                continue
            m = int(rng.binomial(n_pairs, p))
            if m == 0:
                continue
            idx = rng.choice(n_pairs, size=m, replace=False)
            if a == b:
                i, j = _decode_triangular(idx)
            else:
                i, j = np.divmod(idx, l)
            chunks.append(np.stack([a * l + i, b * l + j], axis=1))
    edges = np.concatenate(chunks) if chunks else np.zeros((0, 2), dtype=np.int64)
    labels = np.repeat(np.arange(4), l)
    return LabeledGraph(cfg.n, edges, labels, 4)


def clique_star(r: int) -> LabeledGraph:
    """Class-0 clique on ``r`` nodes, each clique node with ``r - 1`` class-1 leaves."""
    if r < 2:
        raise ValueError("clique_star needs r >= 2")
    edges = [(i, j) for i in range(r) for j in range(i + 1, r)]
    leaf = r
    for i in range(r):
        for _ in range(r - 1):
            edges.append((i, leaf))
            leaf += 1
    labels = [0] * r + [1] * (r * (r - 1))
    return LabeledGraph.from_edges(edges, labels, num_classes=2)


def two_class_degree_imbalanced(
    half_n: int, d: int, l: int, seed: int | np.random.SeedSequence | None = 0
) -> LabeledGraph:
    """Configuration model with ``half_n`` class-0 nodes of degree ``d`` and
    ``half_n`` class-1 nodes of degree ``l * d``."""
    if half_n < 1 or d < 1:
        raise ValueError("half_n and d must be positive")
    if l < 2:
        raise ValueError("degree ratio l must be at least 2")
    degrees = [d] * half_n + [l * d] * half_n
    if sum(degrees) % 2:
        raise ValueError("half_n * d * (1 + l) must be even")
    labels = [0] * half_n + [1] * half_n
    return configuration_model(ConfigModelSpec(degrees, labels, seed, num_classes=2))


def shuffle_labels(g: LabeledGraph, seed: int | np.random.SeedSequence | None = 0) -> LabeledGraph:
    """Uniformly permute node labels over a fixed graph (class sizes preserved)."""
    rng = make_rng(seed)
    return g.with_labels(rng.permutation(g.labels))


def monotonicity_counterexample(multiplier: int) -> ClassAdjacencyMatrix:
    """Four-class matrix with ``c[2,3] = c[3,2] = M`` and ``c[3,3] = 2``.

    Adding a class-0/class-1 edge to it *raises* adjusted homophily for every
    ``M >= 1``.
    """
    if multiplier < 1:
        raise ValueError("multiplier must be >= 1")
    counts = np.zeros((4, 4), dtype=np.int64)
    counts[2, 3] = counts[3, 2] = multiplier
    counts[3, 3] = 2
    return matrix_instance(counts)


def poisson_degrees(n: int, mean: float, rng: np.random.Generator) -> np.ndarray:
    """Poisson degree sequence with its sum made even by bumping one node."""
    deg = rng.poisson(mean, size=n).astype(np.int64)
    if deg.sum() % 2:
        deg[int(rng.integers(n))] += 1
    return deg


# Null-model label/degree settings used for constant-baseline experiments.
BASELINE_SETTINGS = ("balanced", "imbalanced", "degree-imbalanced")


@dataclass(frozen=True)
class BaselineSetting:
    """A family of configuration-model graphs indexed by size ``n``.

    ``balanced``: four equal classes, Poisson degrees.
    ``imbalanced``: two classes with ``minority_share`` of nodes in class 1,
    Poisson degrees.
    ``degree-imbalanced``: two equal classes, degrees ``d`` and ``ratio * d``
    with ``d`` chosen so the mean degree is ``mean_degree``.
    """

    name: str
    mean_degree: float = 10.0
    minority_share: float = 0.1
    ratio: int = 4

    def __post_init__(self) -> None:
        if self.name not in BASELINE_SETTINGS:
            raise ValueError(f"unknown baseline setting {self.name!r}; choose from {BASELINE_SETTINGS}")

    def sample(self, n: int, seed: np.random.SeedSequence | int) -> LabeledGraph:
        ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        deg_seed, match_seed = ss.spawn(2)
        if self.name == "degree-imbalanced":
            d = max(1, round(2 * self.mean_degree / (1 + self.ratio)))
            half = n // 2
            degrees = [d] * half + [self.ratio * d] * (n - half)
            if sum(degrees) % 2:
                degrees[0] += 1
            labels = [0] * half + [1] * (n - half)
            return configuration_model(ConfigModelSpec(degrees, labels, match_seed, num_classes=2))
        rng = make_rng(deg_seed)
        degrees = poisson_degrees(n, self.mean_degree, rng)
        if self.name == "balanced":
            labels = np.arange(n) % 4
            num_classes = 4
        else:
            minority = max(1, int(math.floor(n * self.minority_share + 0.5)))
            labels = np.r_[np.zeros(n - minority, dtype=np.int64), np.ones(minority, dtype=np.int64)]
            num_classes = 2
        return configuration_model(ConfigModelSpec(degrees, labels, match_seed, num_classes=num_classes))
