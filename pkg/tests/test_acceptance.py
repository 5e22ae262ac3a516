"""Acceptance criteria A1-A8.

Each test prints one ``A<k> PASS|FAIL|SKIP  <detail>`` line and asserts the
criterion. Run directly (``python3 tests/test_acceptance.py``) to get just
the summary lines. A8 needs real data: set ``GRAPHCHAR_CORA_DIR`` to a
directory holding ``cora.edges`` and ``cora.labels``.
"""
from __future__ import annotations

import math
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_small_graph  # noqa: E402
from graphchar import homophily as hm  # noqa: E402
from graphchar.cli import main as cli_main, oracle_diff  # noqa: E402
from graphchar.generators import (  # noqa: E402
    SbmFourClassConfig,
    clique_star,
    matrix_instance,
    monotonicity_counterexample,
    sbm_four_class,
    trial_seeds,
    two_class_degree_imbalanced,
)
from graphchar.informativeness import li_edge  # noqa: E402
from graphchar.io import characterize, load_dataset  # noqa: E402
from graphchar.properties import (  # noqa: E402
    CONDITIONAL,
    HANDLES,
    _monotonicity_search,
    baseline_samples,
    builtin_suite,
    make_rng,
)

CORA_ENV = "GRAPHCHAR_CORA_DIR"


def _line(tag: str, ok: bool | None, detail: str) -> str:
    status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    return f"{tag} {status}  {detail}"


def _emit(request, text: str) -> None:
    capman = request.config.pluginmanager.getplugin("capturemanager")
    with capman.global_and_fixture_disabled():
        print("\n" + text)


# --- criteria -------------------------------------------------------------------


def criterion_a1():
    start = time.perf_counter()
    rng = np.random.default_rng(20241015)
    graphs = [random_small_graph(rng, max_n=12, max_c=5) for _ in range(200)]
    graphs += builtin_suite().all() + [clique_star(r) for r in range(2, 7)]
    worst = 0.0
    failures = 0
    for g in graphs:
        for d in oracle_diff(g).values():
            failures += not d["ok"]
            if math.isfinite(d["abs_diff"]):
                worst = max(worst, d["abs_diff"])
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 10
    return ok, f"{len(graphs)} graphs x 9 measures, max |diff| {worst:.2e}, {failures} failures, {elapsed:.1f}s"


def criterion_a2():
    errs = [abs(hm.class_homophily(clique_star(r)) - float(Fraction(1, 2) - Fraction(1, r))) for r in range(2, 13)]
    g = clique_star(4)
    extra = [abs(hm.edge_homophily(g) - 1 / 3), abs(hm.adjusted_homophily(g) + 0.5),
             abs(hm.balanced_homophily(g) - 0.25)]
    worst = max(errs + extra)
    return worst < 1e-12, f"h_class over r=2..12 and r=4 values, max error {worst:.1e}"


def criterion_a3():
    worst = 0.0
    reproduced = True
    for M in range(1, 21):
        m = monotonicity_counterexample(M)
        before = hm.adjusted_homophily(m)
        after = hm.adjusted_homophily(m.add_inter_edge(0, 1))
        worst = max(worst, abs(before + M / (M + 2)), abs(after - (1 - M) / (M + 5)))
        reproduced &= after > before
    res = _monotonicity_search(HANDLES["h_adj"], 100_000, make_rng(31), region="above")
    ok = reproduced and worst < 1e-12 and res.violation is None and res.trials == 100_000
    return ok, (f"counterexample M=1..20 reproduced={reproduced} (max error {worst:.1e}); "
                f"{res.trials} trials above threshold, violations={0 if res.violation is None else 1}")


def criterion_a4():
    start = time.perf_counter()
    handles = [HANDLES["h_adj"], HANDLES["li_edge"], HANDLES["h_edge"]]
    sizes = (500, 2000, 8000)
    samples = baseline_samples(handles, sizes=sizes, trials=100, seed=4)
    ok = True
    parts = []
    for setting, per_n in samples.values.items():
        for name in ("h_adj", "li_edge"):
            devs = [float(np.mean(np.abs(per_n[n][name]))) for n in sizes]
            good = devs[-1] < 0.05 and all(b <= a for a, b in zip(devs, devs[1:]))
            ok &= good
            parts.append(f"{setting}/{name} " + "/".join(f"{d:.4f}" for d in devs))
    imb = samples.values["imbalanced"][8000]
    gap = abs(np.mean(imb["h_edge"]) - np.mean(imb["pbar_sq"]))
    ok &= gap < 0.02
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    return ok, (f"mean |h| at n=500/2000/8000: " + "; ".join(parts)
                + f"; 90/10 h_edge - sum pbar^2 = {gap:.4f}; {elapsed:.0f}s")


def criterion_a5():
    code = cli_main(["properties", "--seed", "0", "--output", os.devnull])
    return code == 0, f"properties subcommand exit code {code} (0 means table matches expected verdicts)"


def criterion_a6():
    hc, hb = [], []
    for ss in trial_seeds(6, 200):
        g = two_class_degree_imbalanced(1000, 4, 4, seed=ss)
        hc.append(hm.class_homophily(g))
        hb.append(hm.balanced_adjusted_homophily(g))
    mc, mb = float(np.mean(hc)), float(np.mean(hb))
    ok = abs(mc - 0.3) <= 0.02 and abs(mb) <= 0.02
    return ok, f"mean h_class {mc:.4f} (target 0.3), mean h_bal_adj {mb:+.4f} (target 0)"


SBM_GRID = [
    (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.25, 0.25, 0.25),
    (0.5, 0.5, 0.0), (0.5, 0.0, 0.25), (0.0, 0.0, 0.5),
    (0.7, 0.1, 0.1), (0.1, 0.7, 0.1), (0.4, 0.2, 0.2),
]


def _sbm_li_limit(p0, p1, p2):
    probs = [p for p in (p0, p1, p2, p2) if p > 0]
    return 1 + sum(p * math.log(p) for p in probs) / math.log(4)


def criterion_a7():
    start = time.perf_counter()
    worst_adj = worst_li = 0.0
    for i, (p0, p1, p2) in enumerate(SBM_GRID):
        adj, inf = [], []
        for ss in trial_seeds(700 + i, 10):
            m = hm.build_class_adjacency(sbm_four_class(SbmFourClassConfig(4000, p0, p1, p2, 10.0, ss)))
            adj.append(hm.adjusted_homophily(m))
            inf.append(li_edge(m))
        worst_adj = max(worst_adj, abs(np.mean(adj) - (4 / 3 * p0 - 1 / 3)))
        worst_li = max(worst_li, abs(np.mean(inf) - _sbm_li_limit(p0, p1, p2)))
    elapsed = time.perf_counter() - start
    ok = worst_adj <= 0.03 and worst_li <= 0.03 and elapsed < 120
    return ok, f"9 triples x 10 seeds, max |h_adj - limit| {worst_adj:.4f}, max |LI - limit| {worst_li:.4f}, {elapsed:.1f}s"


CORA_TARGETS = {"h_edge": 0.81, "h_node": 0.83, "h_class": 0.77, "h_adj": 0.77, "li_edge": 0.59, "li_node": 0.61}


def criterion_a8():
    root = os.environ.get(CORA_ENV)
    if not root or not (Path(root) / "cora.edges").exists():
        return None, f"cora data not supplied (set {CORA_ENV})"
    ds = load_dataset(Path(root) / "cora.edges", Path(root) / "cora.labels")
    vals = characterize(ds.graph, "cora").values()
    diffs = {k: abs(vals[k] - v) for k, v in CORA_TARGETS.items()}
    ok = all(d <= 0.01 for d in diffs.values())
    return ok, f"n={ds.graph.num_nodes} |E|={ds.graph.num_edges}; " + ", ".join(
        f"{k} {vals[k]:.3f}" for k in CORA_TARGETS)


CRITERIA = {
    "A1": criterion_a1, "A2": criterion_a2, "A3": criterion_a3, "A4": criterion_a4,
    "A5": criterion_a5, "A6": criterion_a6, "A7": criterion_a7, "A8": criterion_a8,
}


@pytest.mark.parametrize("tag", list(CRITERIA))
def test_acceptance(tag, request):
    ok, detail = CRITERIA[tag]()
    _emit(request, _line(tag, ok, detail))
    if ok is None:
        pytest.skip(detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for tag, fn in CRITERIA.items():
        ok, detail = fn()
        results.append(ok)
        print(_line(tag, ok, detail), flush=True)
    sys.exit(0 if all(r is not False for r in results) else 1)
