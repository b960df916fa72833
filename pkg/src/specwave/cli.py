"""Command-line harness: graph generation, target synthesis, fitting, verification.

Subcommands
-----------
``gen-grid ROWS COLS --out PATH``
    Write a 4-neighbour grid graph as an edge list.
``make-target``
    Filter a signal through the exact spectral oracle and write the result as
    a signal CSV (the ground truth a model is later fitted against).
``fit``
    Run a batch of fits — the cross product of signals, filter names, and
    model specs — and write a JSON report plus a side-by-side text table.
``verify``
    Run the four closed-form solution checks on a graph and report residuals.
``sweep``
    Re-run ``fit`` over a grid of learning rates / orders / step sizes and
    report the argmin-loss configuration per (signal, filter).

Conventions
-----------
* Exit codes: 0 success, 1 input error, 2 numeric or verification failure.
* Reports are JSON with ``schema_version`` 1 and every float printed to 17
  significant digits; no timestamps, so identical runs are byte-identical.
* Synthetic signals draw uniform [0, 1) entries from numpy's PCG64 generator
  seeded explicitly, making them a pure function of (seed, node count); signal
  i of a multi-signal request uses seed + i.
* Fit cells are seeded ``fit.seed + cell_index`` with cells enumerated in
  (signal, filter, spec) order, so every cell is reproducible in isolation.
* The exact-oracle route is dense; the harness warns on graphs larger than
  1000 nodes.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .exceptions import FitDivergedError, NumericalError
from .fitting import FitConfig, FitReport, ModelSpec, fit
from .graphs import Graph, combinatorial_laplacian, grid_graph, normalized_laplacian
from .integrator import IntegratorConfig
from .io import dump_json, dumps_json, read_edge_list, read_signal, write_edge_list, write_signal
from .polynomials import FAMILIES, PolynomialBasis
from .spectral import FILTER_NAMES, eigendecompose, exact_filter, reference_filter
from .verifier import verify_theorems

__all__ = [
    "ExperimentConfig",
    "synthetic_signal",
    "run_experiment",
    "cmd_gen_grid",
    "cmd_make_target",
    "cmd_fit",
    "cmd_verify",
    "cmd_sweep",
    "main",
]

SCHEMA_VERSION = 1
DENSE_ORACLE_WARN_NODES = 1000
TRACE_POINTS = 200

_SPEC_DEFAULTS = {
    "mode": "plain",
    "basis": "chebyshev",
    "order": 10,
    "shift": None,
    "jacobi_a": 0.0,
    "jacobi_b": 0.0,
    "tau": 0.5,
    "steps": 4,
    "sharing": "shared",
    "learn_gains": False,
}

_FIT_DEFAULTS = {"lr": 0.05, "iters": 2000, "patience": 100, "init_scale": 0.01, "seed": 0}


def synthetic_signal(seed: int, n: int) -> np.ndarray:
    """Uniform [0, 1) signal of length ``n`` from a PCG64 generator seeded by ``seed``."""
    return np.random.Generator(np.random.PCG64(seed)).random(n)


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of a fitting experiment.

    ``graph_source`` is ``{"grid": [rows, cols]}`` or ``{"path": str}``;
    ``signal_source`` is ``{"synthetic": {"seed": int, "count": int}}`` or
    ``{"paths": [str, ...]}``. ``specs`` holds model-spec dicts (see module
    docstring of :mod:`specwave.fitting`), ``fit`` the optimizer settings.
    With ``aggregate`` set, one coefficient table is fitted across all signals
    per (filter, spec) instead of one per signal.
    """

    graph_source: dict
    signal_source: dict
    filters: tuple
    specs: tuple
    fit: dict
    laplacian: str = "normalized"
    aggregate: bool = False

    @staticmethod
    def from_dict(raw: dict) -> "ExperimentConfig":
        known = {"graph", "signals", "filters", "specs", "fit", "laplacian", "aggregate"}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        graph = raw.get("graph") or {"grid": [16, 16]}
        signals = raw.get("signals") or {"synthetic": {"seed": 0, "count": 1}}
        filters = tuple(raw.get("filters") or FILTER_NAMES)
        for name in filters:
            reference_filter(name)  # validates
        specs = []
        for spec_raw in raw.get("specs") or [dict(_SPEC_DEFAULTS)]:
            unknown = set(spec_raw) - set(_SPEC_DEFAULTS)
            if unknown:
                raise ValueError(f"unknown spec keys: {sorted(unknown)}")
            specs.append({**_SPEC_DEFAULTS, **spec_raw})
        fit_raw = raw.get("fit") or {}
        unknown = set(fit_raw) - set(_FIT_DEFAULTS)
        if unknown:
            raise ValueError(f"unknown fit keys: {sorted(unknown)}")
        laplacian = raw.get("laplacian", "normalized")
        if laplacian not in ("normalized", "combinatorial"):
            raise ValueError(f"laplacian must be 'normalized' or 'combinatorial', got {laplacian!r}")
        return ExperimentConfig(
            graph_source=graph,
            signal_source=signals,
            filters=filters,
            specs=tuple(specs),
            fit={**_FIT_DEFAULTS, **fit_raw},
            laplacian=laplacian,
            aggregate=bool(raw.get("aggregate", False)),
        )

    def to_dict(self) -> dict:
        return {
            "graph": self.graph_source,
            "signals": self.signal_source,
            "filters": list(self.filters),
            "specs": [dict(s) for s in self.specs],
            "fit": dict(self.fit),
            "laplacian": self.laplacian,
            "aggregate": self.aggregate,
        }


def _build_model_spec(spec_dict: dict) -> ModelSpec:
    basis = PolynomialBasis(
        family=spec_dict["basis"],
        shift=spec_dict["shift"],
        jacobi_a=spec_dict["jacobi_a"],
        jacobi_b=spec_dict["jacobi_b"],
    )
    integrator = None
    if spec_dict["mode"] == "hyperbolic":
        integrator = IntegratorConfig(
            tau=spec_dict["tau"],
            steps=spec_dict["steps"],
            basis=basis,
            sharing=spec_dict["sharing"],
        )
    return ModelSpec(
        mode=spec_dict["mode"],
        basis=basis,
        order=spec_dict["order"],
        integrator=integrator,
        learn_gains=spec_dict["learn_gains"],
    )


def _spec_label(spec_dict: dict) -> str:
    label = f"{spec_dict['mode']}/{spec_dict['basis']}[{spec_dict['order']}]"
    if spec_dict["mode"] == "hyperbolic":
        label += f"@tau={spec_dict['tau']:g},m={spec_dict['steps']}"
    return label


def _resolve_graph(source: dict) -> Graph:
    if "grid" in source:
        rows, cols = source["grid"]
        return grid_graph(int(rows), int(cols))
    if "path" in source:
        return read_edge_list(source["path"])
    raise ValueError(f"graph source needs 'grid' or 'path', got {sorted(source)}")


def _resolve_signals(source: dict, n: int) -> list[tuple[str, np.ndarray]]:
    if "synthetic" in source:
        seed = int(source["synthetic"].get("seed", 0))
        count = int(source["synthetic"].get("count", 1))
        if count < 1:
            raise ValueError(f"synthetic signal count must be >= 1, got {count}")
        return [(f"synthetic:{seed + i}", synthetic_signal(seed + i, n)) for i in range(count)]
    if "paths" in source:
        out = []
        for path in source["paths"]:
            sig = read_signal(path)
            if sig.shape[0] != n:
                raise ValueError(f"{path}: signal length {sig.shape[0]} != {n} nodes")
            out.append((str(path), sig))
        if not out:
            raise ValueError("signal source lists no paths")
        return out
    raise ValueError(f"signal source needs 'synthetic' or 'paths', got {sorted(source)}")


def _laplacian_matrix(g: Graph, kind: str):
    return normalized_laplacian(g) if kind == "normalized" else combinatorial_laplacian(g)


def _downsample(trace: np.ndarray) -> list:
    if trace.size <= TRACE_POINTS:
        return [float(v) for v in trace]
    stride = int(np.ceil(trace.size / TRACE_POINTS))
    kept = list(trace[::stride])
    if (trace.size - 1) % stride:
        kept.append(trace[-1])
    return [float(v) for v in kept]


def _fit_cell(spec_dict: dict, fit_cfg: dict, pairs, L, seed: int) -> FitReport:
    spec = _build_model_spec(spec_dict)
    config = FitConfig(
        learning_rate=fit_cfg["lr"],
        max_iter=fit_cfg["iters"],
        patience=fit_cfg["patience"],
        init_scale=fit_cfg["init_scale"],
        seed=seed,
    )
    return fit(spec, config, pairs, L)


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Execute every (signal, filter, spec) cell of a config; return the report dict."""
    graph = _resolve_graph(cfg.graph_source)
    if graph.n > DENSE_ORACLE_WARN_NODES:
        print(
            f"warning: {graph.n} nodes; the exact spectral oracle is dense and will be slow",
            file=sys.stderr,
        )
    L = _laplacian_matrix(graph, cfg.laplacian)
    ed = eigendecompose(L)
    signals = _resolve_signals(cfg.signal_source, graph.n)

    cells = []
    cell_index = 0
    failed = False
    for filter_name in cfg.filters:
        g = reference_filter(filter_name)
        targets = [(name, x, exact_filter(ed, g, x)) for name, x in signals]
        for spec_index, spec_dict in enumerate(cfg.specs):
            groups = (
                [(f"aggregate({len(targets)} signals)", [(x, y) for _, x, y in targets])]
                if cfg.aggregate
                else [(name, [(x, y)]) for name, x, y in targets]
            )
            for signal_name, pairs in groups:
                cell = {
                    "signal": signal_name,
                    "filter": filter_name,
                    "spec_index": spec_index,
                    "spec": _spec_label(spec_dict),
                }
                try:
                    report = _fit_cell(
                        spec_dict, cfg.fit, pairs, L, cfg.fit["seed"] + cell_index
                    )
                    cell.update(
                        final_loss=report.final_loss,
                        r2=report.r2,
                        iterations=report.iterations,
                        theta=report.coefficients,
                        gains=report.gains,
                        loss_trace_downsampled=_downsample(report.loss_trace),
                        error=None,
                    )
                except (FitDivergedError, NumericalError) as exc:
                    failed = True
                    cell.update(
                        final_loss=None,
                        r2=None,
                        iterations=None,
                        theta=None,
                        gains=None,
                        loss_trace_downsampled=None,
                        error=str(exc),
                    )
                cells.append(cell)
                cell_index += 1

    aggregates = []
    for spec_index, spec_dict in enumerate(cfg.specs):
        for filter_name in cfg.filters:
            group = [
                c
                for c in cells
                if c["filter"] == filter_name
                and c["spec_index"] == spec_index
                and c["error"] is None
            ]
            if group:
                aggregates.append(
                    {
                        "filter": filter_name,
                        "spec_index": spec_index,
                        "spec": _spec_label(spec_dict),
                        "cell_count": len(group),
                        "mean_squared_error": float(np.mean([c["final_loss"] for c in group])),
                        "mean_r2": float(np.mean([c["r2"] for c in group])),
                    }
                )

    return {
        "schema_version": SCHEMA_VERSION,
        "environment": {"package": "specwave", "version": __version__, "seed": cfg.fit["seed"]},
        "config": cfg.to_dict(),
        "nodes": graph.n,
        "cells": cells,
        "aggregates": aggregates,
        "failed_cells": sum(1 for c in cells if c["error"] is not None),
        "_failed": failed,
    }


def _print_table(report: dict, stream=None) -> None:
    """Side-by-side text table: one row per filter, one column per spec."""
    if stream is None:
        stream = sys.stdout  # resolved per call so redirection is honoured
    specs = sorted({(a["spec_index"], a["spec"]) for a in report["aggregates"]})
    if not specs:
        print("no successful cells", file=stream)
        return
    by_key = {(a["filter"], a["spec_index"]): a for a in report["aggregates"]}
    filters = list(dict.fromkeys(c["filter"] for c in report["cells"]))
    name_width = max(len("filter"), max(len(f) for f in filters))
    col_width = max(24, max(len(label) for _, label in specs) + 2)
    header = "filter".ljust(name_width) + "".join(label.rjust(col_width) for _, label in specs)
    print(header, file=stream)
    print("-" * len(header), file=stream)
    for filter_name in filters:
        row = filter_name.ljust(name_width)
        for spec_index, _ in specs:
            agg = by_key.get((filter_name, spec_index))
            text = f"{agg['mean_squared_error']:.4e} ({agg['mean_r2']:.4f})" if agg else "failed"
            row += text.rjust(col_width)
        print(row, file=stream)


def cmd_gen_grid(rows: int, cols: int, out_path) -> int:
    write_edge_list(grid_graph(rows, cols), out_path)
    return 0


def cmd_make_target(graph: Graph, signal: np.ndarray, filter_name: str, laplacian: str, out_path) -> int:
    if graph.n > DENSE_ORACLE_WARN_NODES:
        print(
            f"warning: {graph.n} nodes; the exact spectral oracle is dense and will be slow",
            file=sys.stderr,
        )
    if signal.shape[0] != graph.n:
        raise ValueError(f"signal length {signal.shape[0]} != {graph.n} nodes")
    ed = eigendecompose(_laplacian_matrix(graph, laplacian))
    write_signal(exact_filter(ed, reference_filter(filter_name), signal), out_path)
    return 0


def cmd_fit(cfg: ExperimentConfig, out_path=None) -> int:
    report = run_experiment(cfg)
    failed = report.pop("_failed")
    if out_path is not None:
        dump_json(report, out_path)
    else:
        print(dumps_json(report))
    _print_table(report)
    return 2 if failed else 0


def cmd_verify(graph: Graph, speed: float, t: float, tol: float, out_path=None) -> int:
    report = verify_theorems(combinatorial_laplacian(graph), speed, t, tol)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "environment": {"package": "specwave", "version": __version__},
        "nodes": report.nodes,
        "speed": report.speed,
        "time": report.time,
        "tolerance": report.tolerance,
        "checks": [
            {
                "check_name": c.check_name,
                "residual": c.residual,
                "tolerance": c.tolerance,
                "passed": c.passed,
            }
            for c in report.checks
        ],
        "passed": report.passed,
    }
    text = dumps_json(payload)
    if out_path is not None:
        Path(out_path).write_text(text + "\n")
    print(text)
    return 0 if report.passed else 2


def cmd_sweep(cfg: ExperimentConfig, lrs, orders, taus, out_path=None) -> int:
    """Cross-product sweep; argmin-loss configuration per (signal, filter)."""
    best: dict[tuple, dict] = {}
    any_failed = False
    for lr in lrs:
        for order in orders:
            for tau in taus:
                specs = []
                for spec_dict in cfg.specs:
                    updated = {**spec_dict, "order": int(order)}
                    if updated["mode"] == "hyperbolic":
                        updated["tau"] = float(tau)
                    specs.append(updated)
                combo_cfg = ExperimentConfig(
                    graph_source=cfg.graph_source,
                    signal_source=cfg.signal_source,
                    filters=cfg.filters,
                    specs=tuple(specs),
                    fit={**cfg.fit, "lr": float(lr)},
                    laplacian=cfg.laplacian,
                    aggregate=cfg.aggregate,
                )
                report = run_experiment(combo_cfg)
                any_failed = any_failed or report["_failed"]
                for cell in report["cells"]:
                    if cell["error"] is not None:
                        continue
                    key = (cell["signal"], cell["filter"])
                    entry = {
                        "signal": cell["signal"],
                        "filter": cell["filter"],
                        "spec_index": cell["spec_index"],
                        "spec": cell["spec"],
                        "lr": float(lr),
                        "order": int(order),
                        "tau": float(tau),
                        "final_loss": cell["final_loss"],
                        "r2": cell["r2"],
                    }
                    if key not in best or entry["final_loss"] < best[key]["final_loss"]:
                        best[key] = entry
    payload = {
        "schema_version": SCHEMA_VERSION,
        "environment": {"package": "specwave", "version": __version__, "seed": cfg.fit["seed"]},
        "grid": {"lr": [float(v) for v in lrs], "order": [int(v) for v in orders], "tau": [float(v) for v in taus]},
        "best": list(best.values()),
    }
    text = dumps_json(payload)
    if out_path is not None:
        Path(out_path).write_text(text + "\n")
    else:
        print(text)
    return 2 if any_failed else 0


# ----------------------------------------------------------------------
# argparse plumbing
# ----------------------------------------------------------------------


def _add_graph_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", metavar="PATH", help="edge-list file")
    p.add_argument(
        "--grid", nargs=2, type=int, metavar=("ROWS", "COLS"), help="generate a grid graph"
    )


def _graph_source_from_args(args) -> dict:
    if args.graph is not None and args.grid is not None:
        raise ValueError("give either --graph or --grid, not both")
    if args.graph is not None:
        return {"path": args.graph}
    if args.grid is not None:
        return {"grid": [args.grid[0], args.grid[1]]}
    return {}


def _split_list(text: str, cast) -> list:
    items = [part.strip() for part in text.split(",") if part.strip()]
    if not items:
        raise ValueError(f"empty list argument: {text!r}")
    return [cast(part) for part in items]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specwave",
        description="Polynomial spectral filters on graphs: generate, fit, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-grid", help="write a grid graph as an edge list")
    p.add_argument("rows", type=int)
    p.add_argument("cols", type=int)
    p.add_argument("--out", required=True, metavar="PATH")

    p = sub.add_parser("make-target", help="filter a signal through the exact oracle")
    _add_graph_flags(p)
    p.add_argument("--signal", metavar="PATH", help="input signal CSV")
    p.add_argument("--synthetic", type=int, metavar="SEED", help="generate the input signal")
    p.add_argument("--filter", required=True, choices=FILTER_NAMES)
    p.add_argument("--laplacian", choices=("normalized", "combinatorial"), default="normalized")
    p.add_argument("--out", required=True, metavar="PATH")

    p = sub.add_parser("fit", help="fit filter coefficients and write a report")
    _add_fit_flags(p)

    p = sub.add_parser("verify", help="check the closed-form solution structure")
    _add_graph_flags(p)
    p.add_argument("--speed", type=float, default=1.0, help="propagation coefficient (default 1)")
    p.add_argument("--time", type=float, default=1.0, help="evaluation time (default 1)")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("sweep", help="cross-product hyperparameter sweep over fit")
    _add_fit_flags(p, sweep=True)
    return parser


def _add_fit_flags(p: argparse.ArgumentParser, sweep: bool = False) -> None:
    p.add_argument("--config", metavar="PATH", help="experiment config JSON; flags override it")
    _add_graph_flags(p)
    p.add_argument("--signal", action="append", metavar="PATH", help="signal CSV (repeatable)")
    p.add_argument("--synthetic", type=int, metavar="SEED", help="synthetic signal seed")
    p.add_argument("--count", type=int, help="number of synthetic signals (default 1)")
    p.add_argument("--filter", metavar="NAME[,NAME...]", help="filter names, comma separated")
    p.add_argument("--mode", choices=("plain", "hyperbolic"))
    p.add_argument("--basis", choices=FAMILIES)
    p.add_argument("--order", type=int if not sweep else str, help="polynomial order" + (" list" if sweep else ""))
    p.add_argument("--shift", choices=("L", "L-I", "I-L", "L/2"))
    p.add_argument("--tau", type=float if not sweep else str, help="leapfrog step size" + (" list" if sweep else ""))
    p.add_argument("--steps", type=int, help="leapfrog step count")
    p.add_argument("--sharing", choices=("shared", "per-step"))
    p.add_argument("--learn-gains", action="store_true", default=None)
    p.add_argument("--lr", type=float if not sweep else str, help="learning rate" + (" list" if sweep else ""))
    p.add_argument("--iters", type=int, help="max optimizer iterations")
    p.add_argument("--patience", type=int, help="early-stopping patience")
    p.add_argument("--init-scale", type=float, help="coefficient init scale")
    p.add_argument("--seed", type=int, help="fit seed")
    p.add_argument("--laplacian", choices=("normalized", "combinatorial"))
    p.add_argument("--aggregate", action="store_true", default=None)
    p.add_argument("--out", metavar="PATH")


def _config_from_args(args, sweep: bool = False) -> ExperimentConfig:
    raw = {}
    if args.config is not None:
        raw = json.loads(Path(args.config).read_text())
        if not isinstance(raw, dict):
            raise ValueError(f"{args.config}: config JSON must be an object")
    graph_source = _graph_source_from_args(args)
    if graph_source:
        raw["graph"] = graph_source
    if args.signal is not None and args.synthetic is not None:
        raise ValueError("give either --signal or --synthetic, not both")
    if args.signal is not None:
        raw["signals"] = {"paths": list(args.signal)}
    elif args.synthetic is not None:
        raw["signals"] = {"synthetic": {"seed": args.synthetic, "count": args.count or 1}}
    elif args.count is not None:
        synth = raw.get("signals", {}).get("synthetic", {"seed": 0})
        raw["signals"] = {"synthetic": {**synth, "count": args.count}}
    if args.filter is not None:
        raw["filters"] = _split_list(args.filter, str)
    spec_overrides = {
        "mode": args.mode,
        "basis": args.basis,
        "shift": args.shift,
        "steps": args.steps,
        "sharing": args.sharing,
        "learn_gains": args.learn_gains,
    }
    if not sweep:
        spec_overrides["order"] = args.order
        spec_overrides["tau"] = args.tau
    spec_overrides = {k: v for k, v in spec_overrides.items() if v is not None}
    if spec_overrides:
        base_specs = raw.get("specs") or [dict(_SPEC_DEFAULTS)]
        raw["specs"] = [{**s, **spec_overrides} for s in base_specs]
    fit_overrides = {
        "iters": args.iters,
        "patience": args.patience,
        "init_scale": args.init_scale,
        "seed": args.seed,
    }
    if not sweep:
        fit_overrides["lr"] = args.lr
    fit_overrides = {k: v for k, v in fit_overrides.items() if v is not None}
    if fit_overrides:
        raw["fit"] = {**raw.get("fit", {}), **fit_overrides}
    if args.laplacian is not None:
        raw["laplacian"] = args.laplacian
    if args.aggregate is not None:
        raw["aggregate"] = args.aggregate
    return ExperimentConfig.from_dict(raw)


def _graph_from_args(args) -> Graph:
    source = _graph_source_from_args(args)
    if not source:
        raise ValueError("a graph is required: give --graph PATH or --grid ROWS COLS")
    return _resolve_graph(source)


def _dispatch(args) -> int:
    if args.command == "gen-grid":
        return cmd_gen_grid(args.rows, args.cols, args.out)
    if args.command == "make-target":
        graph = _graph_from_args(args)
        if (args.signal is None) == (args.synthetic is None):
            raise ValueError("give exactly one of --signal or --synthetic")
        signal = (
            read_signal(args.signal)
            if args.signal is not None
            else synthetic_signal(args.synthetic, graph.n)
        )
        return cmd_make_target(graph, signal, args.filter, args.laplacian, args.out)
    if args.command == "fit":
        return cmd_fit(_config_from_args(args), args.out)
    if args.command == "verify":
        return cmd_verify(_graph_from_args(args), args.speed, args.time, args.tol, args.out)
    if args.command == "sweep":
        cfg = _config_from_args(args, sweep=True)
        lrs = _split_list(args.lr, float) if args.lr is not None else [cfg.fit["lr"]]
        orders = (
            _split_list(args.order, int)
            if args.order is not None
            else sorted({s["order"] for s in cfg.specs})
        )
        taus = (
            _split_list(args.tau, float)
            if args.tau is not None
            else sorted({s["tau"] for s in cfg.specs})
        )
        return cmd_sweep(cfg, lrs, orders, taus, args.out)
    raise ValueError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _dispatch(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
