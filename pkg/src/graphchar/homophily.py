"""Label homophily measures.

Edge-wise measures (``edge_homophily``, ``adjusted_homophily``, ``modularity``,
``balanced_homophily``, ``balanced_adjusted_homophily``) are functions of the
class adjacency matrix alone and accept either a :class:`ClassAdjacencyMatrix`
or a :class:`LabeledGraph`. ``node_homophily`` and ``class_homophily`` need
per-node information and take a graph.

Aggregates are integers, so the scalar paths evaluate the defining ratios
exactly (Python ints / ``Fraction``) and round once at the end. Appending an
empty class therefore leaves tolerant measures bit-identical.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .graph import ClassAdjacencyMatrix, LabeledGraph, build_class_adjacency

__all__ = [
    "MeasureUndefinedError",
    "HomophilyProfile",
    "edge_homophily",
    "node_homophily",
    "class_homophily",
    "adjusted_homophily",
    "modularity",
    "balanced_homophily",
    "balanced_adjusted_homophily",
    "adjusted_homophily_is_degenerate",
    "profile",
    "MEASURE_NAMES",
]

MEASURE_NAMES = ("h_edge", "h_node", "h_class", "h_adj", "h_mod", "h_bal", "h_bal_adj")


class MeasureUndefinedError(ValueError):
    """The measure has no value on this input (e.g. no edges, a single class)."""


def _matrix(x: ClassAdjacencyMatrix | LabeledGraph) -> ClassAdjacencyMatrix:
    return x if isinstance(x, ClassAdjacencyMatrix) else build_class_adjacency(x)


def _aggregates(m: ClassAdjacencyMatrix) -> tuple[int, int, int]:
    """Return ``(N, trace, sum of squared row sums)`` as Python ints."""
    total = m.total
    if total == 0:
        raise MeasureUndefinedError("measure undefined on a graph without edges")
    rows = [int(a) for a in m.row_sums]
    return total, m.trace, sum(a * a for a in rows)


def edge_homophily(m: ClassAdjacencyMatrix | LabeledGraph) -> float:
    """Fraction of edges whose endpoints share a class."""
    m = _matrix(m)
    total, trace, _ = _aggregates(m)
    return trace / total


def node_homophily(g: LabeledGraph) -> float:
    """Mean over non-isolated nodes of the same-class share of neighbors.

    Isolated nodes have no neighbor share and are left out of the average.
    Parallel edges count once per copy, both in the numerator and the degree.
    """
    if g.num_edges == 0:
        raise MeasureUndefinedError("node homophily needs at least one edge")
    y = g.labels
    u, v = g.edges[:, 0], g.edges[:, 1]
    same = (y[u] == y[v]).astype(np.float64)
    same_count = np.bincount(u, weights=same, minlength=g.num_nodes) + np.bincount(
        v, weights=same, minlength=g.num_nodes
    )
    deg = g.degrees
    active = deg > 0
    return float(np.mean(same_count[active] / deg[active]))


def class_homophily(g: LabeledGraph) -> float:
    """Clipped per-class excess of intra-class edge share over class size share.

    Classes with zero degree sum are skipped in the sum but still counted in
    the ``1 / (C - 1)`` normalisation; this is what makes the measure react to
    empty classes.
    """
    num_classes = g.num_classes
    if num_classes < 2:
        raise MeasureUndefinedError("class homophily needs at least two classes")
    if g.num_edges == 0:
        raise MeasureUndefinedError("class homophily needs at least one edge")
    m = build_class_adjacency(g)
    n = g.num_nodes
    acc = Fraction(0)
    for k in range(num_classes):
        a_k = int(m.row_sums[k])
        if a_k == 0:
            continue
        term = Fraction(int(m.counts[k, k]), a_k) - Fraction(int(g.class_sizes[k]), n)
        if term > 0:
            acc += term
    return float(acc / (num_classes - 1))


def adjusted_homophily_is_degenerate(m: ClassAdjacencyMatrix | LabeledGraph) -> bool:
    """True when a single class carries every edge endpoint (zero denominator)."""
    m = _matrix(m)
    total, _, sq = _aggregates(m)
    return total * total == sq


def adjusted_homophily(m: ClassAdjacencyMatrix | LabeledGraph, *, strict: bool = False) -> float:
    """Edge homophily corrected for the configuration-model expectation.

    Equal to the categorical assortativity coefficient::

        (h_edge - sum_k pbar_k^2) / (1 - sum_k pbar_k^2),   pbar_k = a_k / N

    When one class carries every edge endpoint the denominator vanishes; all
    edges are then intra-class and the value is reported as 1.0 by convention
    (or :class:`MeasureUndefinedError` is raised if ``strict``).
    """
    m = _matrix(m)
    total, trace, sq = _aggregates(m)
    den = total * total - sq
    if den == 0:
        if strict:
            raise MeasureUndefinedError("adjusted homophily undefined: one class carries all edges")
        return 1.0
    return (total * trace - sq) / den


def modularity(m: ClassAdjacencyMatrix | LabeledGraph) -> float:
    """Numerator of adjusted homophily: ``h_edge - sum_k pbar_k^2``."""
    m = _matrix(m)
    total, trace, sq = _aggregates(m)
    return (total * trace - sq) / (total * total)


def _balanced_sum(m: ClassAdjacencyMatrix) -> Fraction:
    if m.total == 0:
        raise MeasureUndefinedError("balanced homophily needs at least one edge")
    acc = Fraction(0)
    for k in range(m.num_classes):
        a_k = int(m.row_sums[k])
        if a_k:
            acc += Fraction(int(m.counts[k, k]), a_k)
    return acc


def balanced_homophily(m: ClassAdjacencyMatrix | LabeledGraph) -> float:
    """Per-class intra-edge share averaged over all ``C`` classes.

    Classes without edge endpoints contribute zero to the sum but still count
    in the ``1 / C`` factor.
    """
    m = _matrix(m)
    return float(_balanced_sum(m) / m.num_classes)


def balanced_adjusted_homophily(m: ClassAdjacencyMatrix | LabeledGraph) -> float:
    """Chance-corrected balanced homophily, ``(C * h_bal - 1) / (C - 1)``."""
    m = _matrix(m)
    c = m.num_classes
    if c < 2:
        raise MeasureUndefinedError("balanced adjusted homophily needs at least two classes")
    return float((_balanced_sum(m) - 1) / (c - 1))


@dataclass
class HomophilyProfile:
    h_edge: float | None = None
    h_node: float | None = None
    h_class: float | None = None
    h_adj: float | None = None
    h_mod: float | None = None
    h_bal: float | None = None
    h_bal_adj: float | None = None
    flags: dict[str, str] = field(default_factory=dict)

    def values(self) -> dict[str, float | None]:
        return {name: getattr(self, name) for name in MEASURE_NAMES}

    def to_dict(self) -> dict:
        return asdict(self)


def profile(g: LabeledGraph) -> HomophilyProfile:
    """Every homophily measure of ``g``; undefined ones are ``None`` plus a flag."""
    out = HomophilyProfile()
    m = build_class_adjacency(g)
    edge_wise = {
        "h_edge": edge_homophily,
        "h_adj": adjusted_homophily,
        "h_mod": modularity,
        "h_bal": balanced_homophily,
        "h_bal_adj": balanced_adjusted_homophily,
    }
    graph_wise = {"h_node": node_homophily, "h_class": class_homophily}
    for name in MEASURE_NAMES:
        fn, arg = (edge_wise[name], m) if name in edge_wise else (graph_wise[name], g)
        try:
            setattr(out, name, fn(arg))
        except MeasureUndefinedError as exc:
            out.flags[name] = str(exc)
    if out.h_adj is not None and adjusted_homophily_is_degenerate(m):
        out.flags["h_adj"] = "degenerate: one class carries all edges, reported 1.0 by convention"
    return out
