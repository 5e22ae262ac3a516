"""Brute-force reference values for every measure.

Each measure is recomputed by literally enumerating the sums in its
definition over nodes, neighbor lists and ordered node pairs, using plain
Python and ``math.log``. Nothing here calls into the numpy fast paths; the
only shared piece is the :class:`LabeledGraph` container read as lists.
Intended for small graphs (tens of nodes).
"""
from __future__ import annotations

import math

from .graph import LabeledGraph

ORACLE_MEASURES = (
    "h_edge", "h_node", "h_class", "h_adj", "h_mod", "h_bal", "h_bal_adj", "li_edge", "li_node",
)


class _Plain:
    def __init__(self, g: LabeledGraph):
        self.n = g.num_nodes
        self.C = g.num_classes
        self.y = [int(v) for v in g.labels]
        self.edge_list = [(int(u), int(v)) for u, v in g.edges]
        self.nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edge_list:
            self.nbrs[u].append(v)
            self.nbrs[v].append(u)

    def ordered_pairs(self):
        for u in range(self.n):
            for v in self.nbrs[u]:
                yield u, v

    def class_degree(self, k: int) -> int:
        return sum(len(self.nbrs[v]) for v in range(self.n) if self.y[v] == k)

    def intra_pairs(self, k: int) -> int:
        return sum(1 for u, v in self.ordered_pairs() if self.y[u] == k and self.y[v] == k)


def _h_edge(G: _Plain):
    E = len(G.edge_list)
    if E == 0:
        return None
    return sum(1 for u, v in G.edge_list if G.y[u] == G.y[v]) / E


def _h_node(G: _Plain):
    shares = []
    for v in range(G.n):
        d = len(G.nbrs[v])
        if d:
            shares.append(sum(1 for u in G.nbrs[v] if G.y[u] == G.y[v]) / d)
    return sum(shares) / len(shares) if shares else None


def _h_class(G: _Plain):
    if G.C < 2 or not G.edge_list:
        return None
    total = 0.0
    for k in range(G.C):
        D_k = G.class_degree(k)
        if D_k == 0:
            continue
        n_k = sum(1 for v in range(G.n) if G.y[v] == k)
        total += max(G.intra_pairs(k) / D_k - n_k / G.n, 0.0)
    return total / (G.C - 1)


def _pbar_sq(G: _Plain) -> float:
    two_E = 2 * len(G.edge_list)
    return sum((G.class_degree(k) / two_E) ** 2 for k in range(G.C))


def _h_mod(G: _Plain):
    h = _h_edge(G)
    return None if h is None else h - _pbar_sq(G)


def _h_adj(G: _Plain):
    h = _h_edge(G)
    if h is None:
        return None
    s = _pbar_sq(G)
    two_E = 2 * len(G.edge_list)
    if any(G.class_degree(k) == two_E for k in range(G.C)):
        return 1.0
    return (h - s) / (1 - s)


def _h_bal(G: _Plain):
    if not G.edge_list:
        return None
    total = 0.0
    for k in range(G.C):
        D_k = G.class_degree(k)
        if D_k:
            total += G.intra_pairs(k) / D_k
    return total / G.C


def _h_bal_adj(G: _Plain):
    h = _h_bal(G)
    if h is None or G.C < 2:
        return None
    return (G.C * h - 1) / (G.C - 1)


def _info_ratio(joint: dict, left: dict, right: dict, base_dist: dict):
    denom = 0.0
    for c, p in base_dist.items():
        if p > 0:
            denom += p * math.log(p)
    if denom == 0.0:
        return None
    num = 0.0
    for (c1, c2), p in joint.items():
        if p > 0:
            num += p * math.log(p / (left[c1] * right[c2]))
    return -num / denom


def _li_edge(G: _Plain):
    two_E = 2 * len(G.edge_list)
    if two_E == 0:
        return None
    joint: dict = {}
    for u, v in G.ordered_pairs():
        key = (G.y[u], G.y[v])
        joint[key] = joint.get(key, 0) + 1 / two_E
    pbar = {k: G.class_degree(k) / two_E for k in range(G.C)}
    return _info_ratio(joint, pbar, pbar, pbar)


def _li_node(G: _Plain):
    if not G.edge_list:
        return None
    active = [v for v in range(G.n) if G.nbrs[v]]
    n_act = len(active)
    joint: dict = {}
    for u in active:
        d = len(G.nbrs[u])
        for v in G.nbrs[u]:
            key = (G.y[u], G.y[v])
            joint[key] = joint.get(key, 0) + 1 / (n_act * d)
    p = {k: sum(1 for v in active if G.y[v] == k) / n_act for k in range(G.C)}
    two_E = 2 * len(G.edge_list)
    pbar = {k: G.class_degree(k) / two_E for k in range(G.C)}
    return _info_ratio(joint, p, pbar, p)


_FUNCS = {
    "h_edge": _h_edge,
    "h_node": _h_node,
    "h_class": _h_class,
    "h_adj": _h_adj,
    "h_mod": _h_mod,
    "h_bal": _h_bal,
    "h_bal_adj": _h_bal_adj,
    "li_edge": _li_edge,
    "li_node": _li_node,
}


def oracle_values(g: LabeledGraph) -> dict[str, float | None]:
    """Reference value of every measure; ``None`` where the measure is undefined."""
    G = _Plain(g)
    out = {}
    for name in ORACLE_MEASURES:
        v = _FUNCS[name](G)
        out[name] = None if v is None else float(v)
    return out
