"""Command-line interface: ``graphchar <subcommand> ...``.

Exit codes: 0 success, 1 check failed (property mismatch, oracle diff),
2 edgeless graph in ``characterize``, 64 usage error, 65 unreadable or
inconsistent dataset files. Data goes to stdout
(or ``--output``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .generators import (
    BASELINE_SETTINGS,
    BaselineSetting,
    ConfigModelSpec,
    SbmFourClassConfig,
    clique_star,
    configuration_model_stats,
    sbm_four_class,
    two_class_degree_imbalanced,
)
from .graph import LabeledGraph
from .io import DatasetError, characterize, load_dataset, write_edge_list
from .oracle import ORACLE_MEASURES, oracle_values
from .properties import HANDLES, DEFAULT_MEASURES, baseline_samples, baseline_verdict, property_table

log = logging.getLogger("graphchar")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_EDGELESS = 2
EXIT_USAGE = 64
EXIT_DATA = 65
MODELS = ("config-model", "sbm4", "clique-star", "degree-imbalanced")
ORACLE_TOL = 1e-12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _default_seed() -> int:
    env = os.environ.get("GRAPHCHAR_SEED")
    if env is None:
        return 0
    try:
        return _u64(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"GRAPHCHAR_SEED: {exc}") from None


# --- generator options ------------------------------------------------------------

_MODEL_DEFAULTS = {
    "n": None, "r": None, "p0": None, "p1": None, "p2": None, "expected_degree": 10.0,
    "half_n": None, "d": None, "l": None, "setting": "balanced", "mean_degree": 10.0,
    "degrees": None, "node_labels": None,
}


def _add_model_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("generator")
    g.add_argument("--model", choices=MODELS, help="generate the input graph instead of reading files")
    g.add_argument("--config", type=Path, help="JSON file with generator parameters (flags override it)")
    g.add_argument("--n", type=int, help="nodes (sbm4, config-model)")
    g.add_argument("--r", type=int, help="clique size (clique-star)")
    g.add_argument("--p0", type=float, help="same-class weight (sbm4)")
    g.add_argument("--p1", type=float, help="partner-class weight (sbm4)")
    g.add_argument("--p2", type=float, help="other-class weight (sbm4)")
    g.add_argument("--expected-degree", type=float, help="expected node degree (sbm4, default 10)")
    g.add_argument("--half-n", type=int, help="nodes per class (degree-imbalanced)")
    g.add_argument("--d", type=int, help="low degree (degree-imbalanced)")
    g.add_argument("--l", type=int, help="degree ratio (degree-imbalanced)")
    g.add_argument("--setting", choices=BASELINE_SETTINGS,
                   help="label/degree setting for config-model when no explicit degrees are given")
    g.add_argument("--mean-degree", type=float, help="mean degree for config-model settings (default 10)")
    g.add_argument("--degrees", type=_int_list, help="explicit degree sequence for config-model, e.g. 3,2,2,1")
    g.add_argument("--node-labels", type=_int_list, help="explicit labels for config-model, one per node")


def _model_params(args: argparse.Namespace) -> dict:
    params = dict(_MODEL_DEFAULTS)
    if args.config is not None:
        try:
            loaded = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(loaded) - set(params) - {"model", "seed"}
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        params.update({k: v for k, v in loaded.items() if k in params})
        if args.model is None:
            args.model = loaded.get("model")
        if "seed" in loaded and not args.seed_given:
            args.seed = _u64(str(loaded["seed"]))
    for key in params:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    if args.model not in MODELS:
        raise UsageError(f"--model must be one of {', '.join(MODELS)}")
    return params


def _require(params: dict, model: str, *keys: str) -> None:
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise UsageError(f"{model} needs " + ", ".join("--" + k.replace("_", "-") for k in missing))


def build_model(model: str, params: dict, seed: int) -> tuple[LabeledGraph, dict]:
    """Generate a graph; returns it with the effective configuration echo."""
    echo: dict = {"model": model, "seed": seed}
    try:
        if model == "clique-star":
            _require(params, model, "r")
            echo["r"] = params["r"]
            return clique_star(params["r"]), echo
        if model == "sbm4":
            _require(params, model, "n", "p0", "p1", "p2")
            cfg = SbmFourClassConfig(params["n"], params["p0"], params["p1"], params["p2"],
                                     params["expected_degree"], seed)
            echo.update(n=cfg.n, p0=cfg.p0, p1=cfg.p1, p2=cfg.p2, expected_degree=cfg.expected_degree)
            return sbm_four_class(cfg), echo
        if model == "degree-imbalanced":
            _require(params, model, "half_n", "d", "l")
            echo.update(half_n=params["half_n"], d=params["d"], l=params["l"])
            return two_class_degree_imbalanced(params["half_n"], params["d"], params["l"], seed), echo
        if params["degrees"] is not None:
            _require(params, model, "node_labels")
            spec = ConfigModelSpec(params["degrees"], params["node_labels"], seed)
            g, stats = configuration_model_stats(spec)
            echo.update(degrees=list(params["degrees"]), node_labels=list(params["node_labels"]), **stats)
            return g, echo
        _require(params, model, "n")
        setting = BaselineSetting(params["setting"], mean_degree=params["mean_degree"])
        echo.update(n=params["n"], setting=setting.name, mean_degree=setting.mean_degree)
        return setting.sample(params["n"], seed), echo
    except ValueError as exc:
        raise UsageError(f"{model}: {exc}") from None


def _input_graph(args: argparse.Namespace):
    """Graph from ``--edges/--labels`` or ``--model``; returns (graph, name, mapping, ingestion, echo)."""
    if args.edges or args.labels:
        if args.model:
            raise UsageError("give either --edges/--labels or --model, not both")
        if not (args.edges and args.labels):
            raise UsageError("--edges and --labels must be given together")
        ds = load_dataset(args.edges, args.labels, keep_multi_edges=args.keep_multi_edges)
        name = args.name or Path(args.edges).stem
        return ds.graph, name, ds.label_mapping, ds.stats, None
    if args.model is None and args.config is None:
        raise UsageError("no input graph: pass --edges/--labels or --model")
    params = _model_params(args)
    g, echo = build_model(args.model, params, args.seed)
    return g, args.name or args.model, None, None, echo


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        output.write_text(text)
        log.info("wrote %s", output)


# --- subcommands ------------------------------------------------------------------


def cmd_characterize(args: argparse.Namespace) -> int:
    g, name, mapping, ingestion, echo = _input_graph(args)
    report = characterize(g, name, label_mapping=mapping, ingestion=ingestion,
                          seeds=[args.seed] if echo else [])
    _emit(report.render(args.format), args.output)
    if report.edgeless:
        log.error("graph has no edges; edge-dependent measures are undefined")
        return EXIT_EDGELESS
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    if args.model is None and args.config is None:
        raise UsageError("generate needs --model or --config")
    params = _model_params(args)
    g, echo = build_model(args.model, params, args.seed)
    prefix = str(args.output)
    edge_path, label_path = Path(prefix + ".edges"), Path(prefix + ".labels")
    write_edge_list(g, edge_path, label_path)
    echo.update(num_nodes=g.num_nodes, num_edges=g.num_edges,
                edges=str(edge_path), labels=str(label_path))
    sys.stdout.write(json.dumps(echo, sort_keys=True) + "\n")
    return EXIT_OK


def _parse_measures(text: str | None, default: Sequence[str]) -> list[str]:
    if text is None:
        return list(default)
    names = [m.strip() for m in text.split(",") if m.strip()]
    unknown = [m for m in names if m not in HANDLES]
    if unknown or not names:
        raise UsageError(f"unknown measure(s): {', '.join(unknown) or '(none given)'}; "
                         f"choose from {', '.join(HANDLES)}")
    return names


def cmd_properties(args: argparse.Namespace) -> int:
    measures = _parse_measures(args.measures, DEFAULT_MEASURES)
    table = property_table(measures, baseline_trials=args.trials,
                           monotonicity_trials=args.monotonicity_trials, seed=args.seed,
                           sizes=args.sizes, workers=args.workers)
    _emit((table.to_json() if args.format == "json" else table.to_text()) + "\n", args.output)
    mismatches = table.mismatches()
    for m, p, want, got in mismatches:
        log.warning("%s %s: expected %s, observed %s", m, p, want, got)
    if mismatches and args.strict:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_baseline(args: argparse.Namespace) -> int:
    measures = _parse_measures(args.measures, ("h_edge", "h_adj", "li_edge"))
    handles = [HANDLES[m] for m in measures]
    samples = baseline_samples(handles, [args.setting], args.sizes, args.trials, args.seed,
                               mean_degree=args.mean_degree, workers=args.workers)
    if args.format == "json":
        verdicts = {h.name: baseline_verdict(h, samples).to_dict() for h in handles}
        _emit(json.dumps({"setting": args.setting, "seed": args.seed, "trials": args.trials,
                          "values": {str(n): v for n, v in samples.values[args.setting].items()},
                          "verdicts": verdicts}, indent=2, sort_keys=True) + "\n", args.output)
        return EXIT_OK
    cols = [*measures, "pbar_sq"]
    rows = []
    for n, per in samples.values[args.setting].items():
        for t in range(args.trials):
            rows.append([args.setting, n, t, *(_fmt(per[c][t]) for c in cols)])
        for stat, fn in (("mean", np.mean), ("std", lambda a: np.std(a, ddof=1) if len(a) > 1 else 0.0)):
            summary = []
            for c in cols:
                vals = [v for v in per[c] if v is not None]
                summary.append(_fmt(float(fn(vals))) if vals else "")
            rows.append([args.setting, n, stat, *summary])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["setting", "n", "trial", *cols])
    writer.writerows(rows)
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def _fmt(v) -> str:
    return "" if v is None else repr(float(v))


def oracle_diff(g: LabeledGraph) -> dict[str, dict]:
    """Fast-path vs brute-force value for every measure, with the absolute difference."""
    report = characterize(g)
    fast = report.homophily.values()
    fast["li_edge"] = report.informativeness.li_edge_raw
    fast["li_node"] = report.informativeness.li_node_raw
    slow = oracle_values(g)
    out = {}
    for name in ORACLE_MEASURES:
        a, b = fast[name], slow[name]
        if a is None and b is None:
            diff, ok = 0.0, True
        elif a is None or b is None:
            diff, ok = math.inf, False
        else:
            diff = abs(a - b)
            ok = diff < ORACLE_TOL
        out[name] = {"fast": a, "oracle": b, "abs_diff": diff, "ok": ok}
    return out


def cmd_oracle(args: argparse.Namespace) -> int:
    g, name, *_ = _input_graph(args)
    if g.num_nodes > args.max_n:
        raise UsageError(f"graph has {g.num_nodes} nodes; oracle refuses more than --max-n {args.max_n}")
    diffs = oracle_diff(g)
    if args.format == "json":
        text = json.dumps({"dataset": name, "tolerance": ORACLE_TOL, "measures": diffs},
                          indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{'measure':<10} {'fast':>22} {'oracle':>22} {'abs_diff':>10}  ok"]
        for m, d in diffs.items():
            lines.append(f"{m:<10} {_num(d['fast']):>22} {_num(d['oracle']):>22} "
                         f"{d['abs_diff']:>10.3g}  {'yes' if d['ok'] else 'NO'}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if all(d["ok"] for d in diffs.values()) else EXIT_CHECK_FAILED


def _num(v) -> str:
    return "undefined" if v is None else f"{v:.17g}"


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=None,
                        help="RNG seed (unsigned 64-bit); default from GRAPHCHAR_SEED, else 0")
    common.add_argument("--output", type=Path, help="write data here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("--edges", type=Path, help="edge list file")
    files.add_argument("--labels", type=Path, help="label file (node_id<TAB>label)")
    files.add_argument("--keep-multi-edges", action="store_true", help="keep duplicate edges")
    files.add_argument("--name", help="dataset name for the report")

    parser = _Parser(prog="graphchar", description="Homophily and label informativeness of labeled graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("characterize", parents=[common, files], help="measure report for one graph")
    _add_model_args(p)
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.set_defaults(func=cmd_characterize)

    p = sub.add_parser("generate", parents=[common], help="write a generated graph as edge/label files")
    _add_model_args(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("properties", parents=[common], help="property verdict table")
    p.add_argument("--measures", help=f"comma-separated subset of {','.join(HANDLES)}")
    p.add_argument("--trials", type=_positive, default=100, help="baseline Monte Carlo trials per setting and size")
    p.add_argument("--monotonicity-trials", type=_positive, default=20_000)
    p.add_argument("--sizes", type=_int_list, default=[500, 2000, 8000], help="baseline graph sizes")
    p.add_argument("--workers", type=_positive, default=1, help="threads for baseline trials")
    p.add_argument("--no-strict", dest="strict", action="store_false",
                   help="exit 0 even if verdicts differ from the expected table")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_properties)

    p = sub.add_parser("baseline", parents=[common], help="per-trial measure values under the null model")
    p.add_argument("--measures", help="comma-separated measures (default h_edge,h_adj,li_edge)")
    p.add_argument("--setting", choices=BASELINE_SETTINGS, default="balanced")
    p.add_argument("--n", dest="sizes", type=_int_list, default=[2000], help="graph size(s)")
    p.add_argument("--mean-degree", type=float, default=10.0)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("oracle", parents=[common, files], help="diff fast paths against brute force")
    _add_model_args(p)
    p.add_argument("--max-n", type=_positive, default=50, help="refuse graphs larger than this")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    try:
        args.seed_given = args.seed is not None
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"graphchar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DatasetError as exc:
        print(f"graphchar: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
