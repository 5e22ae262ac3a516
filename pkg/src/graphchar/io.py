"""Edge-list / label-file ingestion and the measure report.

Edge file: one whitespace-separated pair of node ids per line. Label file:
``node_id<TAB>label`` per line. Blank lines and lines starting with ``#``
are ignored in both. Node ids and labels are arbitrary strings.
"""
from __future__ import annotations

import csv
import io as _io
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .graph import LabeledGraph
from .homophily import HomophilyProfile, MEASURE_NAMES, profile
from .informativeness import LIProfile, li_profile

log = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1


class DatasetError(ValueError):
    """Malformed or inconsistent dataset files."""


@dataclass
class IngestStats:
    duplicate_edges: int = 0
    self_loops: int = 0
    isolated_nodes: int = 0


@dataclass
class LoadedDataset:
    graph: LabeledGraph
    node_ids: list[str]
    label_mapping: dict[str, int]
    stats: IngestStats


def _data_lines(path: Path):
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if line and not line.startswith("#"):
                    yield lineno, raw.rstrip("\r\n")
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _label_order(labels: set[str]) -> list[str]:
    """Integer-looking labels sort numerically, anything else lexicographically."""
    try:
        return sorted(labels, key=int)
    except ValueError:
        return sorted(labels)


def load_dataset(edge_path: str | Path, label_path: str | Path, *,
                 keep_multi_edges: bool = False) -> LoadedDataset:
    """Read an edge list and label file into a :class:`LabeledGraph`.

    Nodes are indexed in label-file order; classes get dense indices in the
    sorted label order. Self-loops are dropped and counted. Duplicate edges
    (in either orientation) are collapsed unless ``keep_multi_edges``.
    """
    node_index: dict[str, int] = {}
    raw_labels: list[str] = []
    for lineno, line in _data_lines(Path(label_path)):
        parts = line.split("\t")
        if len(parts) < 2:
            parts = line.split(None, 1)
        if len(parts) < 2:
            raise DatasetError(f"{label_path}:{lineno}: expected 'node_id<TAB>label'")
        node, label = parts[0].strip(), parts[1].strip()
        if node in node_index:
            raise DatasetError(f"{label_path}:{lineno}: node {node!r} labeled twice")
        node_index[node] = len(raw_labels)
        raw_labels.append(label)

    pairs: list[tuple[int, int]] = []
    missing: set[str] = set()
    stats = IngestStats()
    for lineno, line in _data_lines(Path(edge_path)):
        parts = line.split()
        if len(parts) < 2:
            raise DatasetError(f"{edge_path}:{lineno}: expected two node ids")
        a, b = parts[0], parts[1]
        if a not in node_index or b not in node_index:
            missing.update(x for x in (a, b) if x not in node_index)
            continue
        if a == b:
            stats.self_loops += 1
            continue
        pairs.append((node_index[a], node_index[b]))
    if missing:
        shown = sorted(missing)
        more = f" (and {len(shown) - 20} more)" if len(shown) > 20 else ""
        raise DatasetError(f"nodes without a label: {', '.join(shown[:20])}{more}")

    edges = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    edges = np.sort(edges, axis=1)
    if not keep_multi_edges and len(edges):
        unique = np.unique(edges, axis=0)
        stats.duplicate_edges = len(edges) - len(unique)
        edges = unique
    if stats.duplicate_edges:
        log.warning("collapsed %d duplicate edges", stats.duplicate_edges)
    if stats.self_loops:
        log.warning("dropped %d self-loops", stats.self_loops)

    order = _label_order(set(raw_labels))
    mapping = {lab: i for i, lab in enumerate(order)}
    labels = np.array([mapping[lab] for lab in raw_labels], dtype=np.int64)
    graph = LabeledGraph(len(raw_labels), edges, labels, max(len(order), 1))
    stats.isolated_nodes = int((graph.degrees == 0).sum())
    return LoadedDataset(graph, list(node_index), mapping, stats)


def load_edge_list(edge_path: str | Path, label_path: str | Path, *,
                   keep_multi_edges: bool = False) -> LabeledGraph:
    return load_dataset(edge_path, label_path, keep_multi_edges=keep_multi_edges).graph


def write_edge_list(g: LabeledGraph, edge_path: str | Path, label_path: str | Path) -> None:
    """Write ``g`` in the ingestion format with node ids ``0..n-1`` and integer labels.

    Edges are written in canonical order, so reading the files back with
    ``keep_multi_edges=True`` reproduces ``g`` (provided every class is used).
    """
    with open(edge_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(f"{u}\t{v}\n" for u, v in g.edges.tolist())
    with open(label_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(f"{i}\t{y}\n" for i, y in enumerate(g.labels.tolist()))


# --- report ---------------------------------------------------------------------

_LI_FIELDS = ("li_edge", "li_node")


@dataclass
class MeasureReport:
    dataset: str
    num_nodes: int
    num_edges: int
    num_classes: int
    homophily: HomophilyProfile
    informativeness: LIProfile
    flags: dict[str, str] = field(default_factory=dict)
    label_mapping: dict[str, int] = field(default_factory=dict)
    ingestion: dict[str, int] = field(default_factory=dict)
    seeds: list[int] = field(default_factory=list)
    tool_version: str = __version__
    schema_version: int = REPORT_SCHEMA_VERSION

    @property
    def edgeless(self) -> bool:
        return self.num_edges == 0

    def values(self) -> dict[str, float | None]:
        out = self.homophily.values()
        out.update({k: getattr(self.informativeness, k) for k in _LI_FIELDS})
        return out

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "MeasureReport":
        data = dict(data)
        data["homophily"] = HomophilyProfile(**data["homophily"])
        data["informativeness"] = LIProfile(**data["informativeness"])
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MeasureReport":
        return cls.from_dict(json.loads(text))

    def to_table(self) -> str:
        head = f"{self.dataset}: n={self.num_nodes} |E|={self.num_edges} C={self.num_classes}"
        rows = [(name, "undefined" if v is None else f"{v:.6g}") for name, v in self.values().items()]
        width = max(len(name) for name, _ in rows)
        lines = [head, *(f"  {name.ljust(width)}  {val}" for name, val in rows)]
        lines += [f"  note {k}: {msg}" for k, msg in sorted(self.flags.items())]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        cols = ["dataset", "n", "num_edges", "num_classes", *self.values()]
        vals = [self.dataset, self.num_nodes, self.num_edges, self.num_classes,
                *("" if v is None else repr(v) for v in self.values().values())]
        buf = _io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        writer.writerow(vals)
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "table": self.to_table, "csv": self.to_csv}[fmt]()


def characterize(g: LabeledGraph, dataset: str = "graph", *,
                 label_mapping: dict[str, int] | None = None,
                 ingestion: IngestStats | None = None,
                 seeds: list[int] | None = None) -> MeasureReport:
    """All homophily measures and both LI variants of ``g`` in one report."""
    hp = profile(g)
    lp = li_profile(g)
    flags = {**{k: v for k, v in hp.flags.items()}, **lp.flags}
    if ingestion is None:
        ingestion = IngestStats(isolated_nodes=int((g.degrees == 0).sum()))
    if ingestion.isolated_nodes and hp.h_node is not None:
        flags.setdefault("h_node", f"averaged over non-isolated nodes ({ingestion.isolated_nodes} isolated)")
    if g.num_edges == 0:
        for name in (*MEASURE_NAMES, *_LI_FIELDS):
            flags.setdefault(name, "graph has no edges")
    mapping = label_mapping if label_mapping is not None else {str(k): k for k in range(g.num_classes)}
    return MeasureReport(
        dataset=dataset,
        num_nodes=g.num_nodes,
        num_edges=g.num_edges,
        num_classes=g.num_classes,
        homophily=hp,
        informativeness=lp,
        flags=flags,
        label_mapping=mapping,
        ingestion=asdict(ingestion),
        seeds=list(seeds or []),
    )
