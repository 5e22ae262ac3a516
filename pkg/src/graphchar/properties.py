"""Empirical checks of the desirable properties of homophily measures.

A measure is wrapped in a :class:`MeasureHandle` and run against:

* maximal / minimal agreement over a fixed suite of graphs,
* empty class tolerance (append an unused class, value must not move),
* monotonicity for edge-wise measures (randomized search over class
  adjacency matrices, adding one intra- or inter-class edge),
* asymptotic constant baseline (Monte Carlo over configuration-model
  graphs of growing size in several label/degree settings).

The harness knows nothing about specific measures beyond the handle; every
violation carries a witness that :func:`replay_witness` reproduces.
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import homophily as hm
from . import informativeness as li
from .generators import BASELINE_SETTINGS, BaselineSetting, clique_star, configuration_model, ConfigModelSpec, make_rng
from .graph import ClassAdjacencyMatrix, LabeledGraph, build_class_adjacency

log = logging.getLogger(__name__)

MAX_AGREEMENT = "max-agreement"
MIN_AGREEMENT = "min-agreement"
TOLERANCE = "empty-class-tolerance"
MONOTONICITY = "monotonicity"
BASELINE = "constant-baseline"
PROPERTIES = (MAX_AGREEMENT, MIN_AGREEMENT, TOLERANCE, MONOTONICITY, BASELINE)

SATISFIED = "satisfied"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"
CONDITIONAL = "conditional"

EXACT_TOL = 1e-12
SUITE_VERSION = 1


@dataclass(frozen=True)
class MeasureHandle:
    """A measure registered with the harness.

    ``fn`` takes a :class:`ClassAdjacencyMatrix` when ``edge_wise`` and a
    :class:`LabeledGraph` otherwise. ``batch_fn``, if given, maps a stack of
    count matrices ``(B, C, C)`` to ``B`` values (NaN where undefined) and is
    only used to speed up the monotonicity search. ``monotone_threshold``
    marks a measure whose monotonicity is claimed only above a
    matrix-dependent value.
    """

    name: str
    fn: Callable
    edge_wise: bool
    c_max: float | None = None
    c_min: float | None = None
    c_base: float | None = None
    batch_fn: Callable[[np.ndarray], np.ndarray] | None = None
    monotone_threshold: Callable[[np.ndarray], np.ndarray] | None = None
    checks: frozenset = frozenset(PROPERTIES)

    def on_graph(self, g: LabeledGraph) -> float | None:
        return _safe(self.fn, build_class_adjacency(g) if self.edge_wise else g)

    def on_matrix(self, m: ClassAdjacencyMatrix) -> float | None:
        return _safe(self.fn, m)


def _safe(fn: Callable, arg) -> float | None:
    try:
        v = fn(arg)
    except (hm.MeasureUndefinedError, ZeroDivisionError):
        return None
    return None if v is None or np.isnan(v) else float(v)


@dataclass
class PropertyVerdict:
    measure: str
    property: str
    status: str
    witness: dict | None = None
    statistics: dict = field(default_factory=dict)
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


# --- vectorised edge-wise measures used by the monotonicity search ---------


def _batch_aggregates(counts: np.ndarray):
    total = counts.sum(axis=(1, 2))
    trace = np.trace(counts, axis1=1, axis2=2)
    rows = counts.sum(axis=2)
    sq = (rows * rows).sum(axis=1)
    return total, trace, rows, sq


def _batch_h_edge(counts: np.ndarray) -> np.ndarray:
    total, trace, _, _ = _batch_aggregates(counts)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(total > 0, trace / total, np.nan)


def _batch_h_adj(counts: np.ndarray) -> np.ndarray:
    total, trace, _, sq = _batch_aggregates(counts)
    den = total * total - sq
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den != 0, (total * trace - sq) / den, 1.0)
    return np.where(total > 0, out, np.nan)


def _batch_h_mod(counts: np.ndarray) -> np.ndarray:
    total, trace, _, sq = _batch_aggregates(counts)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(total > 0, (total * trace - sq) / (total * total), np.nan)


def _batch_balanced_sum(counts: np.ndarray) -> np.ndarray:
    rows = counts.sum(axis=2)
    diag = np.diagonal(counts, axis1=1, axis2=2)
    with np.errstate(divide="ignore", invalid="ignore"):
        share = np.where(rows > 0, diag / np.where(rows > 0, rows, 1), 0.0)
    return share.sum(axis=1)


def _batch_h_bal(counts: np.ndarray) -> np.ndarray:
    total = counts.sum(axis=(1, 2))
    return np.where(total > 0, _batch_balanced_sum(counts) / counts.shape[1], np.nan)


def _batch_h_bal_adj(counts: np.ndarray) -> np.ndarray:
    c = counts.shape[1]
    total = counts.sum(axis=(1, 2))
    if c < 2:
        return np.full(len(counts), np.nan)
    return np.where(total > 0, (_batch_balanced_sum(counts) - 1) / (c - 1), np.nan)


def adjusted_monotone_threshold(counts: np.ndarray) -> np.ndarray:
    """``sum pbar^2 / (sum pbar^2 + 1)`` per matrix; above it adjusted homophily is monotone."""
    total, _, _, sq = _batch_aggregates(counts)
    with np.errstate(divide="ignore", invalid="ignore"):
        return sq / (sq + total * total)


HANDLES: dict[str, MeasureHandle] = {
    "h_edge": MeasureHandle("h_edge", hm.edge_homophily, True, c_max=1.0, c_min=0.0,
                            batch_fn=_batch_h_edge),
    "h_node": MeasureHandle("h_node", hm.node_homophily, False, c_max=1.0, c_min=0.0),
    "h_class": MeasureHandle("h_class", hm.class_homophily, False, c_max=1.0, c_min=0.0),
    "h_adj": MeasureHandle("h_adj", hm.adjusted_homophily, True, c_max=1.0, c_base=0.0,
                           batch_fn=_batch_h_adj, monotone_threshold=adjusted_monotone_threshold),
    "h_mod": MeasureHandle("h_mod", hm.modularity, True, c_base=0.0, batch_fn=_batch_h_mod),
    "h_bal": MeasureHandle("h_bal", hm.balanced_homophily, True, c_max=1.0, c_min=0.0,
                           batch_fn=_batch_h_bal),
    "h_bal_adj": MeasureHandle("h_bal_adj", hm.balanced_adjusted_homophily, True, c_max=1.0,
                               c_base=0.0, batch_fn=_batch_h_bal_adj),
    "li_edge": MeasureHandle("li_edge", li.li_edge, True, c_base=0.0,
                             checks=frozenset({TOLERANCE, BASELINE})),
    "li_node": MeasureHandle("li_node", li.li_node, False, c_base=0.0,
                             checks=frozenset({TOLERANCE, BASELINE})),
}
DEFAULT_MEASURES = hm.MEASURE_NAMES

_OK, _NO, _NA, _COND = SATISFIED, VIOLATED, NOT_APPLICABLE, CONDITIONAL
EXPECTED_VERDICTS: dict[str, dict[str, str]] = {
    "h_edge": {MAX_AGREEMENT: _OK, MIN_AGREEMENT: _OK, TOLERANCE: _OK, MONOTONICITY: _OK, BASELINE: _NO},
    "h_node": {MAX_AGREEMENT: _OK, MIN_AGREEMENT: _OK, TOLERANCE: _OK, MONOTONICITY: _NA, BASELINE: _NO},
    "h_class": {MAX_AGREEMENT: _OK, MIN_AGREEMENT: _NO, TOLERANCE: _NO, MONOTONICITY: _NO, BASELINE: _NO},
    "h_adj": {MAX_AGREEMENT: _OK, MIN_AGREEMENT: _NO, TOLERANCE: _OK, MONOTONICITY: _COND, BASELINE: _OK},
    "h_mod": {MAX_AGREEMENT: _NO, MIN_AGREEMENT: _NO, TOLERANCE: _OK, MONOTONICITY: _NO, BASELINE: _OK},
    "h_bal": {MAX_AGREEMENT: _OK, MIN_AGREEMENT: _OK, TOLERANCE: _NO, MONOTONICITY: _NO, BASELINE: _NO},
    "h_bal_adj": {MAX_AGREEMENT: _OK, MIN_AGREEMENT: _NO, TOLERANCE: _NO, MONOTONICITY: _NO, BASELINE: _OK},
    "li_edge": {MAX_AGREEMENT: _NA, MIN_AGREEMENT: _NA, TOLERANCE: _OK, MONOTONICITY: _NA, BASELINE: _OK},
    "li_node": {MAX_AGREEMENT: _NA, MIN_AGREEMENT: _NA, TOLERANCE: _OK, MONOTONICITY: _NA, BASELINE: _OK},
}


# --- built-in graph suite --------------------------------------------------


@dataclass
class Suite:
    perfect: list[LabeledGraph]
    heterophilous: list[LabeledGraph]
    mixed: list[LabeledGraph]
    version: int = SUITE_VERSION

    def all(self) -> list[LabeledGraph]:
        return self.perfect + self.heterophilous + self.mixed


def _cycle(nodes: Sequence[int]) -> list[tuple[int, int]]:
    return [(nodes[i], nodes[(i + 1) % len(nodes)]) for i in range(len(nodes))]


def _perfect_graph(num_classes: int) -> LabeledGraph:
    """Disjoint same-class components of varying size and shape, one per class."""
    edges, labels = [], []
    for k in range(num_classes):
        size = 3 + (k % 4)
        base = len(labels)
        nodes = list(range(base, base + size))
        labels += [k] * size
        if k % 2:
            edges += [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]
        else:
            edges += _cycle(nodes)
    return LabeledGraph.from_edges(edges, labels, num_classes)


def _cyclic_heterophilous(num_classes: int, rounds: int) -> LabeledGraph:
    n = num_classes * rounds
    return LabeledGraph.from_edges(_cycle(list(range(n))), [i % num_classes for i in range(n)])


def _random_mixed(rng: np.random.Generator, n: int, num_classes: int, p: float) -> LabeledGraph:
    labels = rng.integers(0, num_classes, size=n)
    labels[:num_classes] = np.arange(num_classes)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return LabeledGraph(n, np.stack([iu[keep], ju[keep]], axis=1), labels, num_classes)


def builtin_suite(version: int = SUITE_VERSION) -> Suite:
    """Fixed, versioned collection of perfect, heterophilous and mixed graphs."""
    if version != 1:
        raise ValueError(f"unknown suite version {version}")
    perfect = [_perfect_graph(c) for c in (1, 2, 5, 10)]
    perfect.append(LabeledGraph.from_edges([(0, 1), (0, 1), (2, 3)], [0, 0, 1, 1]))
    perfect.append(LabeledGraph.from_edges([(0, 1), (1, 2), (3, 4)], [0, 0, 0, 1, 1]))

    hetero = [
        LabeledGraph.from_edges([(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], [0, 0, 1, 1, 1]),
        LabeledGraph.from_edges([(0, i) for i in range(1, 6)], [0, 1, 1, 1, 1, 1]),
        _cyclic_heterophilous(2, 3),
        _cyclic_heterophilous(3, 3),
        _cyclic_heterophilous(5, 2),
        LabeledGraph.from_edges([(i, j) for i in range(4) for j in range(i + 1, 4)], [0, 1, 2, 3]),
        LabeledGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)], [0, 1, 0, 1, 2]),
    ]

    mixed = [clique_star(r) for r in range(2, 7)]
    mixed.append(LabeledGraph.from_edges([(0, 1), (1, 2), (2, 0)], [0, 0, 1]))
    mixed.append(LabeledGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4)], [0, 0, 1, 1, 0]))
    mixed.append(LabeledGraph.from_edges([(0, 1), (0, 2), (0, 3), (4, 5)], [0, 1, 1, 1, 2, 2]))
    rng = make_rng(20240601)
    for i in range(12):
        g = _random_mixed(rng, n=8 + i, num_classes=2 + i % 4, p=0.35)
        if g.num_edges and not g.is_perfectly_homophilous() and not g.is_perfectly_heterophilous():
            mixed.append(g)
    degrees = [3, 3, 2, 2, 2, 1, 1, 4, 3, 1]
    mixed.append(configuration_model(ConfigModelSpec(degrees, [0, 1, 2, 0, 1, 2, 0, 1, 2, 0], seed=7)))
    mixed = [g for g in mixed if not g.is_perfectly_homophilous() and not g.is_perfectly_heterophilous()]
    return Suite(perfect, hetero, mixed)


# --- agreement and tolerance ------------------------------------------------


def _graph_witness(g: LabeledGraph, value, **extra) -> dict:
    return {"graph": g.to_dict(), "value": value, **extra}


def check_maximal_agreement(h: MeasureHandle, suite: Suite) -> PropertyVerdict:
    if MAX_AGREEMENT not in h.checks:
        return PropertyVerdict(h.name, MAX_AGREEMENT, NOT_APPLICABLE)
    if not suite.perfect:
        raise ValueError("suite has no perfectly homophilous graphs")
    perfect_vals = [(g, h.on_graph(g)) for g in suite.perfect]
    defined = [(g, v) for g, v in perfect_vals if v is not None]
    if not defined:
        raise ValueError(f"{h.name} is undefined on every perfect graph in the suite")
    target = h.c_max if h.c_max is not None else defined[0][1]
    stats = {"c_max": target, "perfect_checked": len(defined),
             "perfect_undefined": len(perfect_vals) - len(defined)}
    for g, v in defined:
        if abs(v - target) > EXACT_TOL:
            return PropertyVerdict(h.name, MAX_AGREEMENT, VIOLATED,
                                   _graph_witness(g, v, expected=target, kind="perfect"), stats,
                                   "perfectly homophilous graph does not reach the maximum")
    for g in suite.heterophilous + suite.mixed:
        v = h.on_graph(g)
        if v is not None and v >= target - EXACT_TOL:
            return PropertyVerdict(h.name, MAX_AGREEMENT, VIOLATED,
                                   _graph_witness(g, v, expected=target, kind="imperfect"), stats,
                                   "graph with an inter-class edge reaches the maximum")
    return PropertyVerdict(h.name, MAX_AGREEMENT, SATISFIED, statistics=stats)


def check_minimal_agreement(h: MeasureHandle, suite: Suite) -> PropertyVerdict:
    if MIN_AGREEMENT not in h.checks:
        return PropertyVerdict(h.name, MIN_AGREEMENT, NOT_APPLICABLE)
    if not suite.heterophilous:
        raise ValueError("suite has no perfectly heterophilous graphs")
    defined = [(g, v) for g in suite.heterophilous if (v := h.on_graph(g)) is not None]
    if not defined:
        raise ValueError(f"{h.name} is undefined on every heterophilous graph in the suite")
    target = h.c_min if h.c_min is not None else defined[0][1]
    stats = {"c_min": target, "heterophilous_checked": len(defined)}
    for g, v in defined:
        if abs(v - target) > EXACT_TOL:
            witness = _graph_witness(g, v, expected=target, kind="heterophilous")
            if h.c_min is None:
                witness["reference"] = _graph_witness(defined[0][0], defined[0][1])
            return PropertyVerdict(h.name, MIN_AGREEMENT, VIOLATED, witness, stats,
                                   "perfectly heterophilous graphs disagree on the minimum")
    for g in suite.perfect + suite.mixed:
        v = h.on_graph(g)
        if v is not None and v <= target + EXACT_TOL:
            return PropertyVerdict(h.name, MIN_AGREEMENT, VIOLATED,
                                   _graph_witness(g, v, expected=target, kind="not-heterophilous"),
                                   stats, "graph with an intra-class edge reaches the minimum")
    return PropertyVerdict(h.name, MIN_AGREEMENT, SATISFIED, statistics=stats)


def check_empty_class_tolerance(h: MeasureHandle, suite: Suite | Iterable[LabeledGraph]) -> PropertyVerdict:
    if TOLERANCE not in h.checks:
        return PropertyVerdict(h.name, TOLERANCE, NOT_APPLICABLE)
    graphs = suite.all() if isinstance(suite, Suite) else list(suite)
    checked = 0
    for g in graphs:
        before = h.on_graph(g)
        if before is None:
            continue
        checked += 1
        after = h.on_graph(g.with_empty_classes(1))
        if after != before:
            return PropertyVerdict(h.name, TOLERANCE, VIOLATED,
                                   _graph_witness(g, before, with_empty_class=after),
                                   {"checked": checked}, "value changes when an empty class is added")
    return PropertyVerdict(h.name, TOLERANCE, SATISFIED, statistics={"checked": checked})


# --- monotonicity ------------------------------------------------------------


def _random_count_batch(rng: np.random.Generator, c: int, size: int) -> np.ndarray:
    """Random symmetric count matrices with even diagonals and varied sparsity and scale."""
    scale_off = rng.choice([1, 3, 10, 50], size=(size, 1, 1))
    scale_diag = rng.choice([0, 1, 3, 10, 50], size=(size, 1))
    density = rng.uniform(0.2, 1.0, size=(size, 1, 1))
    off = rng.integers(0, 1 << 30, size=(size, c, c)) % (scale_off + 1)
    off = off * (rng.random((size, c, c)) < density)
    off = np.triu(off, 1)
    diag = 2 * (rng.integers(0, 1 << 30, size=(size, c)) % (scale_diag + 1))
    diag = diag * (rng.random((size, c)) < density[:, :, 0])
    counts = off + np.transpose(off, (0, 2, 1))
    idx = np.arange(c)
    counts[:, idx, idx] = diag
    return counts.astype(np.int64)


def _evaluate_batch(h: MeasureHandle, counts: np.ndarray) -> np.ndarray:
    if h.batch_fn is not None:
        return np.asarray(h.batch_fn(counts), dtype=np.float64)
    out = np.empty(len(counts))
    for b, cm in enumerate(counts):
        v = h.on_matrix(ClassAdjacencyMatrix(cm))
        out[b] = np.nan if v is None else v
    return out


@dataclass
class _SearchResult:
    trials: int
    violation: dict | None


def _monotonicity_search(h: MeasureHandle, trials: int, rng: np.random.Generator,
                         region: str | None = None, batch: int = 512,
                         max_batches: int | None = None) -> _SearchResult:
    """Apply one intra- and one inter-class increment to random matrices.

    ``region`` restricts counting to matrices above (``"above"``) or at/below
    (``"below"``) the handle's monotonicity threshold.
    """
    done = 0
    batches = 0
    max_batches = max_batches or max(50, 200 * trials // batch)
    while done < trials and batches < max_batches:
        batches += 1
        c = int(rng.integers(2, 9))
        counts = _random_count_batch(rng, c, batch)
        before = _evaluate_batch(h, counts)
        keep = ~np.isnan(before) & (counts.sum(axis=(1, 2)) > 0)
        if region is not None:
            thr = h.monotone_threshold(counts)
            keep &= (before > thr) if region == "above" else (before <= thr)
        sel = np.flatnonzero(keep)[: trials - done]
        if not len(sel):
            continue
        counts, before = counts[sel], before[sel]
        rows = np.arange(len(sel))
        k = rng.integers(0, c, size=len(sel))
        i = rng.integers(0, c, size=len(sel))
        j = (i + rng.integers(1, c, size=len(sel))) % c

        intra = counts.copy()
        intra[rows, k, k] += 2
        inter = counts.copy()
        inter[rows, i, j] += 1
        inter[rows, j, i] += 1
        after_intra = _evaluate_batch(h, intra)
        after_inter = _evaluate_batch(h, inter)

        total = counts.sum(axis=(1, 2))
        trace = np.trace(counts, axis1=1, axis2=2)
        bad_intra = (trace < total) & ~(after_intra > before)
        bad_inter = (trace > 0) & ~(after_inter < before)
        for bad, kind in ((bad_intra, "intra"), (bad_inter, "inter")):
            hits = np.flatnonzero(bad)
            if len(hits):
                b = int(hits[0])
                step = {"kind": "intra", "classes": [int(k[b])]} if kind == "intra" else \
                    {"kind": "inter", "classes": [int(i[b]), int(j[b])]}
                after = after_intra if kind == "intra" else after_inter
                return _SearchResult(done + b + 1, {
                    "matrix": counts[b].tolist(), "increment": step,
                    "before": float(before[b]), "after": float(after[b]),
                })
        done += len(sel)
    return _SearchResult(done, None)


def check_monotonicity(h: MeasureHandle, trials: int = 20_000, seed: int = 0,
                       suite: Suite | None = None,
                       tolerance: PropertyVerdict | None = None) -> PropertyVerdict:
    """Monotonicity requires empty class tolerance first, then the randomized search.

    A measure that is not empty class tolerant is reported violated (with the
    tolerance witness) whether or not it is edge-wise. Otherwise a measure that
    is not edge-wise is not applicable.
    """
    if MONOTONICITY not in h.checks:
        return PropertyVerdict(h.name, MONOTONICITY, NOT_APPLICABLE)
    if tolerance is None:
        tolerance = check_empty_class_tolerance(h, suite or builtin_suite())
    if tolerance.status == VIOLATED:
        return PropertyVerdict(h.name, MONOTONICITY, VIOLATED, tolerance.witness,
                               {"reason": "not empty class tolerant"},
                               "monotonicity requires empty class tolerance")
    if not h.edge_wise:
        return PropertyVerdict(h.name, MONOTONICITY, NOT_APPLICABLE,
                               detail="defined for edge-wise measures only")
    rng = make_rng(seed)
    if h.monotone_threshold is None:
        res = _monotonicity_search(h, trials, rng)
        stats = {"trials": res.trials, "seed": seed}
        if res.violation:
            return PropertyVerdict(h.name, MONOTONICITY, VIOLATED, {**res.violation, "seed": seed}, stats)
        return PropertyVerdict(h.name, MONOTONICITY, SATISFIED, statistics=stats)

    above = _monotonicity_search(h, trials, rng, region="above")
    below = _monotonicity_search(h, trials, rng, region="below")
    stats = {"trials_above_threshold": above.trials, "trials_below_threshold": below.trials,
             "seed": seed}
    if above.violation:
        return PropertyVerdict(h.name, MONOTONICITY, VIOLATED, {**above.violation, "seed": seed}, stats,
                               "violation above the claimed threshold")
    if below.violation:
        return PropertyVerdict(h.name, MONOTONICITY, CONDITIONAL, {**below.violation, "seed": seed},
                               stats, "monotone above the threshold; violated below it")
    return PropertyVerdict(h.name, MONOTONICITY, SATISFIED, statistics=stats)


def replay_witness(h: MeasureHandle, verdict: PropertyVerdict) -> bool:
    """Re-evaluate a verdict's witness standalone; True iff the violation reproduces."""
    w = verdict.witness
    if w is None:
        return False
    if verdict.property == MONOTONICITY and "matrix" in w:
        m = ClassAdjacencyMatrix(np.array(w["matrix"]))
        step = w["increment"]
        before = h.on_matrix(m)
        if step["kind"] == "intra":
            after = h.on_matrix(m.add_intra_edge(*step["classes"]))
            return before is not None and not (after > before)
        after = h.on_matrix(m.add_inter_edge(*step["classes"]))
        return before is not None and not (after < before)
    if verdict.property == BASELINE:
        return not _baseline_passes(verdict.statistics, BASELINE_TOLERANCE)[0]
    g = LabeledGraph.from_dict(w["graph"])
    v = h.on_graph(g)
    if verdict.property in (TOLERANCE, MONOTONICITY):
        return v is not None and h.on_graph(g.with_empty_classes(1)) != v
    if verdict.property == MAX_AGREEMENT:
        if w["kind"] == "perfect":
            return g.is_perfectly_homophilous() and abs(v - w["expected"]) > EXACT_TOL
        return not g.is_perfectly_homophilous() and v >= w["expected"] - EXACT_TOL
    if verdict.property == MIN_AGREEMENT:
        if w["kind"] == "heterophilous":
            return g.is_perfectly_heterophilous() and abs(v - w["expected"]) > EXACT_TOL
        return not g.is_perfectly_heterophilous() and v <= w["expected"] + EXACT_TOL
    return False


# --- constant baseline ---------------------------------------------------------

BASELINE_SIZES = (500, 2000, 8000)
BASELINE_TOLERANCE = 0.05
MIN_BASELINE_TRIALS = 30


@dataclass
class BaselineSamples:
    """Per-trial measure values keyed by ``[setting][n][measure]``."""

    values: dict[str, dict[int, dict[str, list]]]
    seed: int
    trials: int
    sizes: tuple[int, ...]


def _sample_measures(setting: BaselineSetting, n: int, ss: np.random.SeedSequence,
                     handles: Sequence[MeasureHandle]) -> dict[str, float | None]:
    g = setting.sample(n, ss)
    m = build_class_adjacency(g)
    out = {h.name: (h.on_matrix(m) if h.edge_wise else h.on_graph(g)) for h in handles}
    rows = m.row_sums.astype(np.float64)
    out["pbar_sq"] = float(np.sum((rows / rows.sum()) ** 2))
    return out


def baseline_samples(handles: Sequence[MeasureHandle], settings: Sequence[str] = BASELINE_SETTINGS,
                     sizes: Sequence[int] = BASELINE_SIZES, trials: int = 100, seed: int = 0,
                     mean_degree: float = 10.0, workers: int = 1) -> BaselineSamples:
    """Evaluate every handle on the same configuration-model samples.

    Trial ``t`` of ``(setting, n)`` always uses the same spawned seed stream,
    so results do not depend on ``workers``.
    """
    root = np.random.SeedSequence(seed)
    streams = root.spawn(len(settings) * len(sizes))
    values: dict = {}
    jobs = []
    for si, name in enumerate(settings):
        setting = BaselineSetting(name, mean_degree=mean_degree)
        values[name] = {}
        for ni, n in enumerate(sizes):
            values[name][n] = {h.name: [] for h in handles} | {"pbar_sq": []}
            for t, ss in enumerate(streams[si * len(sizes) + ni].spawn(trials)):
                jobs.append((name, n, setting, ss))

    def run(job):
        name, n, setting, ss = job
        return name, n, _sample_measures(setting, n, ss, handles)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]
    for name, n, row in results:
        for key, v in row.items():
            values[name][n][key].append(v)
    return BaselineSamples(values, seed, trials, tuple(sizes))


def _baseline_passes(stats: dict, tol: float) -> tuple[bool, dict | None]:
    """Largest-size deviation below ``tol`` and non-increasing in ``n`` in every setting."""
    for name, per_n in stats["settings"].items():
        sizes = sorted(per_n, key=int)
        devs = [per_n[s]["mean_abs_dev"] for s in sizes]
        if any(d is None for d in devs):
            return False, {"setting": name, "reason": "undefined values"}
        if devs[-1] >= tol:
            return False, {"setting": name, "n": int(sizes[-1]), "mean_abs_dev": devs[-1],
                           "reason": f"deviation from c_base not below {tol}"}
        if any(b > a for a, b in zip(devs, devs[1:])):
            return False, {"setting": name, "mean_abs_dev_by_n": dict(zip(map(int, sizes), devs)),
                           "reason": "deviation from c_base does not shrink with n"}
    return True, None


def baseline_verdict(h: MeasureHandle, samples: BaselineSamples,
                     tol: float = BASELINE_TOLERANCE) -> PropertyVerdict:
    """Constant-baseline verdict from precomputed samples.

    ``c_base`` is the handle's declared constant; if none is declared the
    candidate constant is the grand mean over settings at the largest size,
    i.e. the check asks whether *some* constant fits every setting.
    """
    if BASELINE not in h.checks:
        return PropertyVerdict(h.name, BASELINE, NOT_APPLICABLE)
    largest = max(samples.sizes)
    per_setting_means = []
    for name, per_n in samples.values.items():
        vals = [v for v in per_n[largest][h.name] if v is not None]
        if vals:
            per_setting_means.append(float(np.mean(vals)))
    if h.c_base is not None:
        c_base, declared = h.c_base, True
    elif per_setting_means:
        c_base, declared = float(np.mean(per_setting_means)), False
    else:
        return PropertyVerdict(h.name, BASELINE, NOT_APPLICABLE, detail="measure undefined on all samples")

    stats: dict = {"c_base": c_base, "c_base_declared": declared, "seed": samples.seed,
                   "trials": samples.trials, "tolerance": tol, "settings": {}}
    if samples.trials < MIN_BASELINE_TRIALS:
        stats["low_confidence"] = True
    for name, per_n in samples.values.items():
        stats["settings"][name] = {}
        for n, cols in per_n.items():
            vals = np.array([v for v in cols[h.name] if v is not None], dtype=np.float64)
            entry = {"trials": int(len(vals)), "mean": None, "std": None, "mean_abs_dev": None,
                     "max_abs_dev": None, "pbar_sq_mean": float(np.mean(cols["pbar_sq"]))}
            if len(vals):
                entry.update(mean=float(vals.mean()), std=float(vals.std(ddof=1)) if len(vals) > 1 else 0.0,
                             mean_abs_dev=float(np.mean(np.abs(vals - c_base))),
                             max_abs_dev=float(np.max(np.abs(vals - c_base))))
            stats["settings"][name][int(n)] = entry
    ok, failure = _baseline_passes(stats, tol)
    if ok:
        return PropertyVerdict(h.name, BASELINE, SATISFIED, statistics=stats)
    witness = {**failure, "seed": samples.seed, "trials": samples.trials, "sizes": list(samples.sizes)}
    return PropertyVerdict(h.name, BASELINE, VIOLATED, witness, stats,
                           "no constant fits every null-model setting")


def estimate_baseline(h: MeasureHandle, trials: int = 100, seed: int = 0,
                      settings: Sequence[str] = BASELINE_SETTINGS,
                      sizes: Sequence[int] = BASELINE_SIZES, mean_degree: float = 10.0,
                      tol: float = BASELINE_TOLERANCE, workers: int = 1) -> PropertyVerdict:
    if trials < MIN_BASELINE_TRIALS:
        log.warning("only %d baseline trials; verdict flagged low-confidence", trials)
    samples = baseline_samples([h], settings, sizes, trials, seed, mean_degree, workers)
    return baseline_verdict(h, samples, tol)


# --- property table -----------------------------------------------------------


@dataclass
class PropertyTable:
    verdicts: dict[str, dict[str, PropertyVerdict]]
    config: dict = field(default_factory=dict)

    def status_matrix(self) -> dict[str, dict[str, str]]:
        return {m: {p: v.status for p, v in row.items()} for m, row in self.verdicts.items()}

    def mismatches(self, expected: dict[str, dict[str, str]] | None = None) -> list[tuple[str, str, str, str]]:
        """``(measure, property, expected, observed)`` for every disagreement."""
        expected = EXPECTED_VERDICTS if expected is None else expected
        out = []
        for m, row in self.verdicts.items():
            for p, v in row.items():
                want = expected.get(m, {}).get(p)
                if want is not None and want != v.status:
                    out.append((m, p, want, v.status))
        return out

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "suite_version": SUITE_VERSION,
            "config": self.config,
            "verdicts": {m: {p: v.to_dict() for p, v in row.items()} for m, row in self.verdicts.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        symbols = {SATISFIED: "yes", VIOLATED: "no", NOT_APPLICABLE: "n/a", CONDITIONAL: "conditional"}
        headers = ["measure", *PROPERTIES]
        rows = [[m, *(symbols[row[p].status] if p in row else "" for p in PROPERTIES)]
                for m, row in self.verdicts.items()]
        widths = [max(len(str(r[i])) for r in [headers, *rows]) for i in range(len(headers))]
        lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in [headers, *rows]]
        if self.config.get("baseline_trials", MIN_BASELINE_TRIALS) < MIN_BASELINE_TRIALS:
            lines.append(f"note: fewer than {MIN_BASELINE_TRIALS} baseline trials; "
                         "constant-baseline verdicts are low-confidence")
        return "\n".join(lines)


def property_table(measures: Sequence[MeasureHandle | str] = DEFAULT_MEASURES, *,
                   baseline_trials: int = 100, monotonicity_trials: int = 20_000, seed: int = 0,
                   sizes: Sequence[int] = BASELINE_SIZES, suite: Suite | None = None,
                   workers: int = 1) -> PropertyTable:
    handles = [HANDLES[m] if isinstance(m, str) else m for m in measures]
    config = {"baseline_trials": baseline_trials, "monotonicity_trials": monotonicity_trials,
              "seed": seed, "sizes": list(sizes), "suite_version": SUITE_VERSION}
    if not handles:
        return PropertyTable({}, config)
    suite = suite or builtin_suite()
    samples = baseline_samples(handles, BASELINE_SETTINGS, sizes, baseline_trials, seed, workers=workers)
    verdicts = {}
    for h in handles:
        tol = check_empty_class_tolerance(h, suite)
        verdicts[h.name] = {
            MAX_AGREEMENT: check_maximal_agreement(h, suite),
            MIN_AGREEMENT: check_minimal_agreement(h, suite),
            TOLERANCE: tol,
            MONOTONICITY: check_monotonicity(h, monotonicity_trials, seed, suite, tol),
            BASELINE: baseline_verdict(h, samples),
        }
    return PropertyTable(verdicts, config)
