"""Labeled multigraph container and the class-level statistics derived from it.

Every homophily measure in this package is computed from a handful of
aggregates of a node-labeled undirected graph: class sizes, per-class degree
sums, and the class adjacency matrix. This module defines those types.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "LabeledGraph",
    "DegreeProfile",
    "ClassDistribution",
    "ClassAdjacencyMatrix",
    "build_class_adjacency",
    "label_distribution",
    "degree_weighted_distribution",
    "joint_edge_distribution",
    "matrix_instance",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Undirected multigraph with one class label per node.

    Edges are stored canonically: each row is ``(u, v)`` with ``u < v`` and
    rows are sorted lexicographically, so two graphs with the same edge
    multiset compare equal regardless of input order. Self-loops are
    rejected; parallel edges are kept and counted with multiplicity.

    Parameters
    ----------
    num_nodes : int
        Number of nodes ``n``; nodes are ``0 .. n-1``.
    edges : array_like of shape (m, 2)
        Unordered node pairs.
    labels : array_like of shape (n,)
        Class index of every node, in ``[0, num_classes)``.
    num_classes : int, optional
        Number of classes ``C``. Defaults to ``max(labels) + 1``. Passing a
        larger value introduces empty classes.
    """

    num_nodes: int
    edges: np.ndarray
    labels: np.ndarray
    num_classes: int = -1

    def __post_init__(self) -> None:
        n = int(self.num_nodes)
        if n < 0:
            raise ValueError("num_nodes must be non-negative")
        edges = np.asarray(self.edges, dtype=np.int64)
        if edges.size == 0:
            edges = np.zeros((0, 2), dtype=np.int64)
        if edges.ndim != 2 or edges.shape[1] != 2:
            raise ValueError(f"edges must have shape (m, 2), got {edges.shape}")
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if labels.shape[0] != n:
            raise ValueError(f"expected {n} labels, got {labels.shape[0]}")
        if len(edges):
            if edges.min() < 0 or edges.max() >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(edges[:, 0] == edges[:, 1]):
                raise ValueError("self-loops are not allowed")
        if len(labels) and labels.min() < 0:
            raise ValueError("labels must be non-negative")
        observed = int(labels.max()) + 1 if len(labels) else 1
        num_classes = observed if self.num_classes == -1 else int(self.num_classes)
        if num_classes < 1:
            raise ValueError("num_classes must be at least 1")
        if observed > num_classes:
            raise ValueError(f"label {observed - 1} >= num_classes={num_classes}")

        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        order = np.lexsort((hi, lo))
        canon = np.stack([lo[order], hi[order]], axis=1)

        object.__setattr__(self, "num_nodes", n)
        object.__setattr__(self, "edges", _frozen(canon))
        object.__setattr__(self, "labels", _frozen(labels.copy()))
        object.__setattr__(self, "num_classes", num_classes)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Sequence[int]],
        labels: Sequence[int],
        num_classes: int | None = None,
    ) -> "LabeledGraph":
        edge_list = [tuple(e) for e in edges]
        return cls(
            num_nodes=len(labels),
            edges=np.array(edge_list, dtype=np.int64).reshape(-1, 2),
            labels=np.asarray(labels, dtype=np.int64),
            num_classes=-1 if num_classes is None else num_classes,
        )

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.bincount(self.edges.ravel(), minlength=self.num_nodes)
        return _frozen(deg.astype(np.int64))

    @cached_property
    def class_sizes(self) -> np.ndarray:
        return _frozen(np.bincount(self.labels, minlength=self.num_classes).astype(np.int64))

    def degree_profile(self) -> "DegreeProfile":
        class_degrees = np.bincount(
            self.labels, weights=self.degrees, minlength=self.num_classes
        ).astype(np.int64)
        return DegreeProfile(degrees=self.degrees, class_degrees=_frozen(class_degrees))

    def with_empty_classes(self, extra: int = 1) -> "LabeledGraph":
        """Same graph with ``extra`` unused classes appended."""
        return LabeledGraph(self.num_nodes, self.edges, self.labels, self.num_classes + extra)

    def relabeled(self, permutation: Sequence[int]) -> "LabeledGraph":
        """Apply a class permutation: node of class ``k`` gets ``permutation[k]``."""
        perm = np.asarray(permutation, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.num_classes)):
            raise ValueError("not a permutation of the classes")
        return LabeledGraph(self.num_nodes, self.edges, perm[self.labels], self.num_classes)

    def with_labels(self, labels: Sequence[int]) -> "LabeledGraph":
        return LabeledGraph(self.num_nodes, self.edges, labels, self.num_classes)

    def is_perfectly_homophilous(self) -> bool:
        y = self.labels
        return bool(np.all(y[self.edges[:, 0]] == y[self.edges[:, 1]]))

    def is_perfectly_heterophilous(self) -> bool:
        y = self.labels
        return bool(np.all(y[self.edges[:, 0]] != y[self.edges[:, 1]]))

    def to_dict(self) -> dict:
        return {
            "num_nodes": self.num_nodes,
            "num_classes": self.num_classes,
            "labels": self.labels.tolist(),
            "edges": self.edges.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LabeledGraph":
        return cls(
            num_nodes=data["num_nodes"],
            edges=np.array(data["edges"], dtype=np.int64).reshape(-1, 2),
            labels=np.array(data["labels"], dtype=np.int64),
            num_classes=data["num_classes"],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (
            self.num_nodes == other.num_nodes
            and self.num_classes == other.num_classes
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.edges, other.edges)
        )

    def __hash__(self) -> int:
        return hash((self.num_nodes, self.num_classes, self.labels.tobytes(), self.edges.tobytes()))

    def __repr__(self) -> str:
        return (
            f"LabeledGraph(num_nodes={self.num_nodes}, num_edges={self.num_edges}, "
            f"num_classes={self.num_classes})"
        )


@dataclass(frozen=True)
class DegreeProfile:
    degrees: np.ndarray
    class_degrees: np.ndarray


@dataclass(frozen=True, eq=False)
class ClassDistribution:
    """Probability vector over classes."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=np.float64).reshape(-1)
        if np.any(p < 0):
            raise ValueError("probabilities must be non-negative")
        if p.size == 0 or abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1, got {p.sum()!r}")
        object.__setattr__(self, "probs", _frozen(p))

    def __len__(self) -> int:
        return len(self.probs)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    def tolist(self) -> list[float]:
        return self.probs.tolist()


@dataclass(frozen=True, eq=False)
class ClassAdjacencyMatrix:
    """Symmetric ``C x C`` matrix of ordered-pair edge counts.

    ``counts[i, j]`` is the number of ordered pairs ``(u, v)`` over all edges
    with ``y_u = i`` and ``y_v = j``. An intra-class edge therefore adds 2 to a
    diagonal entry, and an inter-class edge adds 1 to each of two mirrored
    off-diagonal entries.
    """

    counts: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.counts)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] < 1:
            raise ValueError(f"counts must be a non-empty square matrix, got shape {c.shape}")
        if not np.issubdtype(c.dtype, np.integer):
            if not np.all(np.equal(np.mod(c, 1), 0)):
                raise ValueError("counts must be integers")
        c = c.astype(np.int64)
        if np.any(c < 0):
            raise ValueError("counts must be non-negative")
        if not np.array_equal(c, c.T):
            raise ValueError("class adjacency matrix must be symmetric")
        object.__setattr__(self, "counts", _frozen(c))

    @property
    def num_classes(self) -> int:
        return int(self.counts.shape[0])

    @cached_property
    def row_sums(self) -> np.ndarray:
        return _frozen(self.counts.sum(axis=1))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def trace(self) -> int:
        return int(np.trace(self.counts))

    def with_empty_classes(self, extra: int = 1) -> "ClassAdjacencyMatrix":
        c = self.num_classes
        out = np.zeros((c + extra, c + extra), dtype=np.int64)
        out[:c, :c] = self.counts
        return ClassAdjacencyMatrix(out)

    def add_intra_edge(self, k: int) -> "ClassAdjacencyMatrix":
        out = self.counts.copy()
        out[k, k] += 2
        return ClassAdjacencyMatrix(out)

    def add_inter_edge(self, i: int, j: int) -> "ClassAdjacencyMatrix":
        if i == j:
            raise ValueError("inter-class edge needs two distinct classes")
        out = self.counts.copy()
        out[i, j] += 1
        out[j, i] += 1
        return ClassAdjacencyMatrix(out)

    def is_perfectly_homophilous(self) -> bool:
        return self.trace == self.total

    def is_perfectly_heterophilous(self) -> bool:
        return self.trace == 0

    def to_dict(self) -> dict:
        return {"counts": self.counts.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "ClassAdjacencyMatrix":
        return cls(np.array(data["counts"], dtype=np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassAdjacencyMatrix):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    def __hash__(self) -> int:
        return hash((self.counts.shape, self.counts.tobytes()))

    def __repr__(self) -> str:
        return f"ClassAdjacencyMatrix({self.counts.tolist()})"


def build_class_adjacency(g: LabeledGraph) -> ClassAdjacencyMatrix:
    """Count ordered label pairs over both orientations of every edge."""
    c = g.num_classes
    y = g.labels
    src = y[g.edges[:, 0]]
    dst = y[g.edges[:, 1]]
    flat = np.bincount(src * c + dst, minlength=c * c).reshape(c, c)
    return ClassAdjacencyMatrix(flat + flat.T)


def label_distribution(g: LabeledGraph) -> ClassDistribution:
    if g.num_nodes == 0:
        raise ValueError("label distribution of an empty graph is undefined")
    return ClassDistribution(g.class_sizes / g.num_nodes)


def degree_weighted_distribution(g: LabeledGraph) -> ClassDistribution:
    """Share of edge endpoints carried by each class."""
    if g.num_edges == 0:
        raise ValueError("degree-weighted distribution of an edgeless graph is undefined")
    return ClassDistribution(g.degree_profile().class_degrees / (2 * g.num_edges))


def joint_edge_distribution(g: LabeledGraph | ClassAdjacencyMatrix) -> np.ndarray:
    """Joint label distribution of the two endpoints of a uniformly random edge."""
    m = g if isinstance(g, ClassAdjacencyMatrix) else build_class_adjacency(g)
    if m.total == 0:
        raise ValueError("joint edge distribution of an edgeless graph is undefined")
    return m.counts / m.total


def matrix_instance(counts) -> ClassAdjacencyMatrix:
    """Build a class adjacency matrix directly from counts, bypassing any graph."""
    return ClassAdjacencyMatrix(np.asarray(counts))
