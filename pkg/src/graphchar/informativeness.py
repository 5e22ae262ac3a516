"""Label informativeness: how much a neighbor's label tells about a node's label.

Both variants are ``I(y_xi, y_eta) / H(y_xi)`` for a random pair of adjacent
nodes ``(xi, eta)``; they differ in how the pair is sampled.

* ``li_edge``: a uniformly random edge, oriented uniformly at random.
* ``li_node``: a uniformly random (non-isolated) node, then a uniformly random
  neighbor of it.

Natural logarithms are used throughout; LI is a ratio of information
quantities, so the base cancels. ``0 log 0`` is taken as 0.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import ClassAdjacencyMatrix, ClassDistribution, LabeledGraph, build_class_adjacency
from .homophily import MeasureUndefinedError

__all__ = ["LIProfile", "entropy", "mutual_information", "li_edge", "li_node", "li_profile"]


def _xlogx_sum(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=np.float64).ravel()
    nz = p[p > 0]
    return float(np.sum(nz * np.log(nz)))


def entropy(d: ClassDistribution | np.ndarray, base: float | None = None) -> float:
    """Shannon entropy; natural log unless ``base`` is given."""
    h = -_xlogx_sum(np.asarray(d))
    if h == 0.0:
        return 0.0
    return h / np.log(base) if base else h


def mutual_information(
    joint: np.ndarray, left: np.ndarray, right: np.ndarray, base: float | None = None
) -> float:
    """``sum p(a,b) log(p(a,b) / (left(a) right(b)))`` over cells with ``p(a,b) > 0``.

    ``left`` and ``right`` need not be the marginals of ``joint``; the node
    sampling variant pairs its joint with the degree-weighted distribution.
    """
    joint = np.asarray(joint, dtype=np.float64)
    rows, cols = np.nonzero(joint > 0)
    p = joint[rows, cols]
    mi = float(np.sum(p * np.log(p / (left[rows] * right[cols]))))
    return mi / np.log(base) if base else mi


def li_edge(m: ClassAdjacencyMatrix | LabeledGraph, base: float | None = None) -> float:
    """Edge-sampled label informativeness (raw, not clamped)."""
    m = m if isinstance(m, ClassAdjacencyMatrix) else build_class_adjacency(m)
    if m.total == 0:
        raise MeasureUndefinedError("label informativeness needs at least one edge")
    joint = m.counts / m.total
    pbar = m.row_sums / m.total
    h = entropy(pbar, base)
    if h == 0.0:
        raise MeasureUndefinedError("label informativeness undefined: one class carries all edges")
    return mutual_information(joint, pbar, pbar, base) / h


def _node_sampling(g: LabeledGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Joint over (node class, neighbor class), node-class marginal, and pbar."""
    if g.num_edges == 0:
        raise MeasureUndefinedError("label informativeness needs at least one edge")
    c = g.num_classes
    y = g.labels
    deg = g.degrees
    active = deg > 0
    n_active = int(active.sum())
    u, v = g.edges[:, 0], g.edges[:, 1]
    # each edge gives both orientations (u -> v) and (v -> u)
    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    w = 1.0 / deg[src]
    joint = np.bincount(y[src] * c + y[dst], weights=w, minlength=c * c).reshape(c, c) / n_active
    p_node = np.bincount(y[active], minlength=c) / n_active
    class_deg = np.bincount(y, weights=deg, minlength=c)
    pbar = class_deg / class_deg.sum()
    return joint, p_node, pbar


def li_node(g: LabeledGraph, base: float | None = None) -> float:
    """Node-then-neighbor label informativeness (raw, not clamped).

    The numerator pairs the node-sampled joint with the class distribution of
    the sampled node and the degree-weighted class distribution. On irregular
    graphs the degree-weighted distribution is not the exact marginal of the
    neighbor label, so the value can exceed 1 (a star is the extreme case);
    it is never negative.
    """
    joint, p_node, pbar = _node_sampling(g)
    h = entropy(p_node, base)
    if h == 0.0:
        raise MeasureUndefinedError("label informativeness undefined: all sampled nodes share a class")
    return mutual_information(joint, p_node, pbar, base) / h


@dataclass
class LIProfile:
    li_edge: float | None = None
    li_node: float | None = None
    li_edge_raw: float | None = None
    li_node_raw: float | None = None
    entropy_marginal: float | None = None
    mutual_information: float | None = None
    flags: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def li_profile(g: LabeledGraph) -> LIProfile:
    """Both LI variants; tiny negative rounding noise is clamped to 0, raw kept."""
    out = LIProfile()
    m = build_class_adjacency(g)
    if m.total:
        pbar = m.row_sums / m.total
        out.entropy_marginal = entropy(pbar)
        out.mutual_information = mutual_information(m.counts / m.total, pbar, pbar)
    for name, fn, arg in (("li_edge", li_edge, m), ("li_node", li_node, g)):
        try:
            raw = fn(arg)
        except MeasureUndefinedError as exc:
            out.flags[name] = str(exc)
            continue
        setattr(out, f"{name}_raw", raw)
        setattr(out, name, max(raw, 0.0))
    if int((g.degrees == 0).sum()) and out.li_node is not None:
        out.flags.setdefault("li_node", "isolated nodes excluded from node sampling")
    return out
