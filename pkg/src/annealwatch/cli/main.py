"""Build hardware graphs and embeddings, run idle-qubit indicator experiments, and analyze them.

Experiments read one YAML config; any value can be overridden with repeated `--set key=value`
options, e.g. `--set sampler.calls=500 --set problems.0.density=0.3`.
"""

from __future__ import annotations

import sys
from itertools import combinations
from pathlib import Path
from typing import TYPE_CHECKING

from annealwatch.cli.args import ArgParser
from annealwatch.cli.progress import call_progress
from annealwatch.core import AnnealWatchError, ConfigError, StageError, plural
from annealwatch.embedding import (
    chimera_clique_embedding,
    clique_capacity,
    load_embedding,
    save_embedding,
    validate_embedding,
)
from annealwatch.env import WatchEnv
from annealwatch.experiment import (
    CONFIG_FILE,
    PLOTS,
    RAW_FILE,
    RunMode,
    analyze_raw,
    export_plot_data,
    load_config,
    read_raw,
    run_alternating,
    run_experiment,
    run_parallel_trend,
    stage,
    write_table,
)
from annealwatch.log import WatchLog
from annealwatch.monitor import (
    BurnInStore,
    annotate,
    load_store,
    observe,
    run_gate_procedure,
    save_store,
)
from annealwatch.paths import RunPaths
from annealwatch.series import dumps_report
from annealwatch.topology import apply_defects, chimera, export_graph, import_graph

if TYPE_CHECKING:
    import argparse
    from collections.abc import Callable, Sequence

    import numpy as np

    from annealwatch.experiment import ExperimentConfig, RunArtifacts
    from annealwatch.topology import HardwareGraph

logger = WatchLog.get_logger("annealwatch.cli", simple=True)

EXPERIMENTS: dict[str, Callable[..., RunArtifacts]] = {
    RunMode.RUN: run_experiment,
    RunMode.TREND: run_parallel_trend,
    RunMode.ALTERNATE: run_alternating,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the `annealwatch` console script. Returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        WatchEnv().validate_all()
        WatchLog.set_level("DEBUG" if args.verbose else WatchEnv().log_level)
        args.handler(args)
    except KeyboardInterrupt:
        print("\nInterrupted.", file=sys.stderr)
        return 130
    except StageError as e:
        print(f"[{e.stage}] {e.cause}", file=sys.stderr)
        return 1
    except (AnnealWatchError, FileNotFoundError) as e:
        print(str(e), file=sys.stderr)
        return 1
    return 0


def build_parser() -> ArgParser:
    parser = ArgParser(prog="annealwatch", description=__doc__, lines=1, add_version=True)
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgParser)

    topo = sub.add_parser("topology", help="Generate a Chimera graph or describe a graph file")
    _add_hardware_args(topo)
    topo.add_argument("-o", "--output", type=Path, help="Write the graph to this file")
    topo.set_defaults(handler=cmd_topology)

    embed = sub.add_parser("embed", help="Build a clique embedding or check an embedding file")
    _add_hardware_args(embed)
    embed.add_argument("-k", type=int, help="Clique size (default: the largest that fits)")
    embed.add_argument("--origin", type=int, nargs=2, default=(0, 0), metavar=("ROW", "COL"))
    embed.add_argument("--check", type=Path, metavar="FILE", help="Validate this embedding file")
    embed.add_argument("-o", "--output", type=Path, help="Write the embedding to this file")
    embed.set_defaults(handler=cmd_embed)

    for mode, text in (
        (RunMode.RUN, "Run one problem next to the indicator"),
        (RunMode.TREND, "Run several problems side by side and test each series for trends"),
        (RunMode.ALTERNATE, "Alternate two problems and compare the indicator distributions"),
    ):
        run = sub.add_parser(mode.value, help=text)
        run.add_argument("config", type=Path, help="Experiment config (YAML)")
        _add_override_args(run)
        run.add_argument("-q", "--quiet", action="store_true", help="Hide the progress spinner")
        run.set_defaults(handler=cmd_experiment, mode=mode)

    analyze = sub.add_parser("analyze", help="Recompute a run's analysis from its raw CSV")
    analyze.add_argument("run_dir", type=Path, help="Run directory")
    analyze.add_argument("--config", type=Path, help="Analysis settings (default: the run's own)")
    _add_override_args(analyze)
    analyze.set_defaults(handler=cmd_analyze)

    monitor = sub.add_parser("monitor", help="Replay the burn-in and gate over recorded calls")
    monitor.add_argument("source", type=Path, help="A single-problem run directory or raw CSV")
    monitor.add_argument("--burn-in", type=int, default=10, help="Calls before gating starts")
    monitor.add_argument("--tau", type=float, help="Threshold (default: calibrated at burn-in)")
    monitor.add_argument("--quantile", type=float, default=0.5, help="Calibration quantile")
    monitor.add_argument("--cap", type=int, help="Keep at most this many history values")
    monitor.add_argument("--store", type=Path, help="Continue from a saved burn-in history")
    monitor.add_argument("--save-store", type=Path, metavar="FILE", help="Save the history")
    monitor.add_argument(
        "--annotate", action="store_true", help="Report percentile ranks instead of gating"
    )
    monitor.add_argument("-o", "--output", type=Path, help="Write the per-call table here")
    monitor.set_defaults(handler=cmd_monitor)

    export = sub.add_parser("export", help="Write plot-ready CSV tables for a run")
    export.add_argument("run_dir", type=Path, help="Run directory")
    export.add_argument(
        "which", nargs="*", default=["all"], help=f"Plot ids: {', '.join(PLOTS)} or all"
    )
    export.add_argument("-o", "--output", type=Path, help="Output directory (default: plots/)")
    export.set_defaults(handler=cmd_export)
    return parser


def cmd_topology(args: argparse.Namespace) -> None:
    g = _hardware(args)
    print(g.describe())
    if args.output:
        export_graph(g, args.output)
        logger.info("Wrote %s.", args.output)


def cmd_embed(args: argparse.Namespace) -> None:
    g = _hardware(args)
    origin = tuple(args.origin)
    if args.check:
        e = load_embedding(args.check, g)
        k = args.k if args.k is not None else e.k
        report = validate_embedding(e, combinations(range(k), 2), range(k))
        report.raise_if_invalid()
        print(f"{args.check}: valid K_{k} embedding, longest chain {e.max_chain_length()}.")
        return

    k = args.k if args.k is not None else clique_capacity(g, origin)
    e = chimera_clique_embedding(g, k, origin)
    print(
        f"K_{k} on {plural('qubit', len(e.footprint()), with_count=True)}, "
        f"longest chain {e.max_chain_length()}."
    )
    if args.output:
        save_embedding(e, args.output)
        logger.info("Wrote %s.", args.output)


def cmd_experiment(args: argparse.Namespace) -> None:
    cfg = _config(args.config, args)
    with call_progress(args.mode.value, show=not args.quiet) as progress:
        artifacts = EXPERIMENTS[args.mode](cfg, progress=progress)
    print(artifacts.run_dir)


def cmd_analyze(args: argparse.Namespace) -> None:
    cfg = None
    if args.config or args.set:
        run_dir = RunPaths(create_dirs=False).existing_run(args.run_dir)
        cfg = _config(args.config or run_dir / CONFIG_FILE, args, check_files=False)
    artifacts = analyze_raw(args.run_dir, cfg)
    print(dumps_report(artifacts.report))


def cmd_monitor(args: argparse.Namespace) -> None:
    source = args.source
    try:
        if not source.is_file():
            source = RunPaths(create_dirs=False).existing_run(source) / RAW_FILE
        table = read_raw(source)
    except (AnnealWatchError, FileNotFoundError) as e:
        raise StageError("monitor", e) from e
    if table.mode is not RunMode.RUN:
        msg = f"The monitor replays single-problem runs; {source} is a {table.mode.value} table."
        raise StageError("monitor", ConfigError(msg))

    store = load_store(args.store) if args.store else BurnInStore(args.burn_in, args.cap)
    problem, indicator = table.data["problem"], table.data["indicator"]
    with stage("monitor"):
        if args.annotate:
            columns, rows = ["call", "indicator", "percentile"], _annotate(store, indicator)
        else:
            log = run_gate_procedure(
                problem, indicator, args.burn_in, args.tau, args.quantile, args.cap, store
            )
            columns = ["call", "phase", "problem", "indicator", "normalized_e", "accept"]
            rows = [
                [
                    r.call,
                    r.phase.value,
                    r.problem_energy,
                    r.indicator_energy,
                    r.decision.normalized_e if r.decision else None,
                    r.decision.accept if r.decision else None,
                ]
                for r in log.records
            ]
            print(
                f"threshold {log.threshold:.4f}, gated {len(log.gated())}, "
                f"accepted {100.0 * log.acceptance_rate:.1f}%"
            )

    if args.output:
        write_table(args.output, columns, rows)
        logger.info("Wrote %s.", args.output)
    if args.save_store:
        save_store(store, args.save_store)
        saved = plural("history value", len(store), with_count=True)
        logger.info("Saved %s to %s.", saved, args.save_store)


def cmd_export(args: argparse.Namespace) -> None:
    which = "all" if "all" in args.which else list(args.which)
    with stage("export"):
        files = export_plot_data(args.run_dir, which, out_dir=args.output)
    for f in files:
        print(f)


def _annotate(store: BurnInStore, indicator: np.ndarray) -> list[list[object]]:
    rows: list[list[object]] = []
    for call, e in enumerate(indicator.tolist()):
        rank = annotate(store, e) if store.ready else None
        rows.append([call, e, rank])
        observe(store, e)
    return rows


def _add_hardware_args(parser: ArgParser) -> None:
    parser.add_argument("-m", type=int, default=4, help="Chimera grid size (m x m cells)")
    parser.add_argument("-t", type=int, default=4, help="Qubits per cell side")
    parser.add_argument("--graph", type=Path, metavar="FILE", help="Load a graph file instead")
    parser.add_argument(
        "--defects", type=int, nargs="+", default=[], metavar="Q", help="Qubits to remove"
    )


def _add_override_args(parser: ArgParser) -> None:
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a config value (repeatable)",
    )
    parser.add_argument(
        "--output-dir", help="Shorthand for --set output.directory=DIR", metavar="DIR"
    )


def _hardware(args: argparse.Namespace) -> HardwareGraph:
    with stage("topology"):
        g = import_graph(args.graph) if args.graph else chimera(args.m, args.t)
        return apply_defects(g, args.defects) if args.defects else g


def _config(
    path: Path, args: argparse.Namespace, check_files: bool = True
) -> ExperimentConfig:
    overrides = list(args.set)
    if args.output_dir:
        overrides.append(f"output.directory={args.output_dir}")
    with stage("config"):
        return load_config(path, overrides, check_files=check_files)


if __name__ == "__main__":
    sys.exit(main())
