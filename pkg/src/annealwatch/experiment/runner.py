"""End-to-end experiment runs.

Every run follows the same stages: build the hardware graph, the problems and their embeddings,
plant the indicator and assemble the device program, sample `calls` batches in order, then
analyze. A failing stage raises `StageError` naming it; the raw CSV written so far stays on disk.
"""

from __future__ import annotations

from contextlib import contextmanager, nullcontext
from typing import TYPE_CHECKING

import numpy as np

from annealwatch.core import ConfigError, StageError, plural
from annealwatch.experiment.analysis import analyze_table, write_analysis
from annealwatch.experiment.artifacts import (
    CONFIG_FILE,
    LOG_FILE,
    RAW_FILE,
    READS_FILE,
    RawWriter,
    RunArtifacts,
    RunMode,
    problem_columns,
    raw_columns,
    read_raw,
)
from annealwatch.experiment.config import ExperimentConfig, load_config, save_config
from annealwatch.experiment.program import (
    DeviceProgram,
    assemble_program,
    build_hardware,
    build_problem,
    place_problems,
)
from annealwatch.log import WatchLog
from annealwatch.paths import RunPaths
from annealwatch.sampler import BackendRegistry, SamplerBackend, SimulatedAnnealer

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator
    from pathlib import Path

    from annealwatch.sampler import AnnealCallConfig

logger = WatchLog.get_logger(__name__)

type ProgressCallback = Callable[[int, int], None]


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Tag failures inside the block with the stage name.

    Raises:
        StageError: Wrapping any exception other than a `StageError` or an interrupt.
    """
    logger.debug("Stage started.", extra={"stage": name})
    try:
        yield
    except StageError:
        raise
    except Exception as e:
        logger.error("%s", e, extra={"stage": name})
        raise StageError(name, e) from e


def run_experiment(
    cfg: ExperimentConfig,
    backend: SamplerBackend | None = None,
    progress: ProgressCallback | None = None,
) -> RunArtifacts:
    """Run one problem next to the indicator and analyze the two series.

    Raises:
        StageError: If any stage fails.
    """
    if len(cfg.problems) != 1:
        msg = f"A run takes one problem, got {len(cfg.problems)}; use the trend experiment."
        raise StageError("config", ConfigError(msg))
    return _execute(cfg, RunMode.RUN, backend, progress)


def run_parallel_trend(
    cfg: ExperimentConfig,
    backend: SamplerBackend | None = None,
    progress: ProgressCallback | None = None,
) -> RunArtifacts:
    """Run several problems side by side in every call, sharing one noise history.

    Each problem gets its own clique (by default one per chip quadrant) and its own series; the
    indicator fills the remaining qubits.

    Raises:
        StageError: If any stage fails, including overlapping embeddings.
    """
    if len(cfg.problems) < 2:
        msg = "The trend experiment needs at least two problems."
        raise StageError("config", ConfigError(msg))
    return _execute(cfg, RunMode.TREND, backend, progress)


def run_alternating(
    cfg: ExperimentConfig,
    backend: SamplerBackend | None = None,
    progress: ProgressCallback | None = None,
) -> RunArtifacts:
    """Alternate two equally sized problems on the same qubits, with a fixed indicator.

    Even calls carry problem 0 and odd calls problem 1. The indicator energies of the two groups
    are compared with a two-sample KS test.

    Raises:
        StageError: If any stage fails.
    """
    if len(cfg.problems) != 2:
        msg = f"The alternating experiment takes two problems, got {len(cfg.problems)}."
        raise StageError("config", ConfigError(msg))
    if cfg.problems[0].n != cfg.problems[1].n:
        msg = "The alternating experiment needs two problems of the same size."
        raise StageError("config", ConfigError(msg))
    return _execute(cfg, RunMode.ALTERNATE, backend, progress)


def analyze_raw(run_dir: Path | str, cfg: ExperimentConfig | None = None) -> RunArtifacts:
    """Recompute every analysis artifact of a run from its raw CSV.

    Args:
        run_dir: The run directory (or a path resolved like `output.directory`).
        cfg: Analysis settings; defaults to the run's own config.yaml.

    Raises:
        StageError: If the raw table or config cannot be read, or the analysis fails.
    """
    with stage("analyze"):
        directory = RunPaths(create_dirs=False).existing_run(run_dir)
        if cfg is None:
            cfg = load_config(directory / CONFIG_FILE, check_files=False)
        table = read_raw(directory / RAW_FILE)
        result = analyze_table(table, cfg.analysis)
        files = write_analysis(result, directory, cfg.analysis.histogram_bins)
    logger.info(
        "Analysis of %s written to %s.", plural("call", len(table), with_count=True), directory
    )
    return RunArtifacts(directory, result.mode, len(table), result.report, tuple(files))


def create_backend(cfg: ExperimentConfig) -> SamplerBackend:
    """The configured backend; the simulator gets the configured noise process."""
    if cfg.sampler.backend == SimulatedAnnealer.name:
        return BackendRegistry().create(cfg.sampler.backend, noise=cfg.noise.initial_state())
    return BackendRegistry().create(cfg.sampler.backend)


def _execute(
    cfg: ExperimentConfig,
    mode: RunMode,
    backend: SamplerBackend | None,
    progress: ProgressCallback | None,
) -> RunArtifacts:
    with stage("output"):
        run_dir = RunPaths().run_dir(cfg.output.directory)
        save_config(cfg, run_dir / CONFIG_FILE)
    (run_dir / LOG_FILE).unlink(missing_ok=True)
    WatchLog.attach_file(run_dir / LOG_FILE)
    try:
        logger.info("Starting %s experiment in %s.", mode.value, run_dir)
        programs = _build_programs(cfg, mode)
        with stage("backend"):
            sampler = backend if backend is not None else create_backend(cfg)
            call_cfg = cfg.sampler.call_config()
        files = [CONFIG_FILE, RAW_FILE]
        with stage("sample"):
            _sample(cfg, mode, programs, sampler, call_cfg, run_dir, progress)
        if cfg.sampler.persist_reads:
            files.append(READS_FILE)

        with stage("analyze"):
            table = read_raw(run_dir / RAW_FILE)
            result = analyze_table(table, cfg.analysis)
            files += write_analysis(result, run_dir, cfg.analysis.histogram_bins)
        _log_summary(result.report.to_dict(), mode)
        return RunArtifacts(run_dir, mode, len(table), result.report, tuple(files))
    finally:
        WatchLog.detach_files()


def _build_programs(cfg: ExperimentConfig, mode: RunMode) -> list[DeviceProgram]:
    with stage("topology"):
        hardware = build_hardware(cfg.topology)
    with stage("problems"):
        problems = [build_problem(p) for p in cfg.problems]
        for p, spec in zip(problems, cfg.problems, strict=True):
            edges = plural("edge", len(p.graph.edges), with_count=True)
            logger.info("Problem: %s, %s.", spec.describe(), edges)

    if mode is RunMode.ALTERNATE:
        programs = []
        for p in problems:
            with stage("embed"):
                placement = place_problems(hardware, [p], cfg.embedding)
            with stage("indicator"):
                programs.append(assemble_program(hardware, [p], placement, cfg))
        _check_same_indicator(programs)
        return programs

    with stage("embed"):
        placements = place_problems(hardware, problems, cfg.embedding)
    with stage("indicator"):
        return [assemble_program(hardware, problems, placements, cfg)]


def _check_same_indicator(programs: list[DeviceProgram]) -> None:
    first, second = (p.indicator_hardware_terms() for p in programs)
    if first.keys() != second.keys():
        logger.warning("The two programs plant the indicator on different qubits.")
        return
    keys = sorted(first)
    gap = float(np.max(np.abs([first[k] - second[k] for k in keys]))) if keys else 0.0
    if gap > 0.0:
        logger.warning(
            "Indicator coefficients differ between the two programs after scaling "
            "(largest difference %.4g); the indicator is not identical across calls.",
            gap,
        )


def _sample(
    cfg: ExperimentConfig,
    mode: RunMode,
    programs: list[DeviceProgram],
    sampler: SamplerBackend,
    call_cfg: AnnealCallConfig,
    run_dir: Path,
    progress: ProgressCallback | None,
) -> None:
    count = len(programs[0].problems)
    columns = raw_columns(count, alternating=mode is RunMode.ALTERNATE)
    read_columns = ["call", "read", *problem_columns(count), "indicator"]
    calls = cfg.sampler.calls

    persist = cfg.sampler.persist_reads
    with (
        RawWriter(run_dir / RAW_FILE, columns) as raw,
        RawWriter(run_dir / READS_FILE, read_columns) if persist else nullcontext() as reads,
    ):
        for call in range(calls):
            index = call % len(programs)
            program = programs[index]
            batch = sampler.sample(program.hardware, call_cfg)
            scores = program.score(batch, call_cfg.seed)

            head: list[int | float] = [call, batch.beta_used, batch.sweeps_used]
            if mode is RunMode.ALTERNATE:
                head.append(index)
            raw.write([*head, *scores.problem, scores.indicator, scores.broken])
            if reads is not None:
                for r in range(batch.num_reads):
                    energies = scores.problem_reads[r].tolist()
                    reads.write([call, r, *energies, float(scores.indicator_reads[r])])
            if progress is not None:
                progress(call + 1, calls)
    logger.info("Recorded %s.", plural("call", calls, with_count=True), extra={"stage": "sample"})


def _log_summary(stats: dict[str, object], mode: RunMode) -> None:
    keys = {
        RunMode.RUN: ("pearson", "rmsd", "bin_agreement", "adf_p", "gate_acceptance_rate"),
        RunMode.TREND: tuple(k for k in stats if k.endswith("_adf_p")),
        RunMode.ALTERNATE: ("ks_stat", "ks_p"),
    }[mode]
    for key in keys:
        value = stats.get(key)
        if isinstance(value, float):
            logger.info("%s = %.4g", key, value)
        else:
            logger.info("%s = %s", key, value)
