"""The analysis stage: everything a run reports, derived from its raw table alone."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING

import numpy as np

from annealwatch.core import ConfigError, SeriesError, plural
from annealwatch.experiment.artifacts import (
    ACF_FILE,
    GATE_FILE,
    STATS_FILE,
    STRATA_FILE,
    RawTable,
    RunMode,
    write_table,
)
from annealwatch.log import WatchLog
from annealwatch.monitor import GateLog, StratifiedHistogram, run_gate_procedure, stratify
from annealwatch.series import (
    AdfResult,
    StatReport,
    acf,
    adf_test,
    analyze_series,
    compare_series,
    ks_two_sample,
    moving_average,
    pacf,
    pearson,
    save_report,
)

if TYPE_CHECKING:
    from pathlib import Path

    from annealwatch.experiment.config import AnalysisConfig
    from annealwatch.series import EnergySeries

logger = WatchLog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class AnalysisResult:
    """The report plus the tables behind it."""

    mode: RunMode
    report: StatReport
    gate: GateLog | None = None
    strata: StratifiedHistogram | None = None
    correlations: dict[str, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)


def effective_window(window: int, n: int) -> int:
    """Shrink a moving-average window that is longer than the series."""
    if window <= n:
        return window
    logger.warning(
        "Window of %s exceeds the %s recorded; using %s.",
        plural("call", window, with_count=True),
        plural("call", n, with_count=True),
        n,
    )
    return n


def analyze_table(table: RawTable, cfg: AnalysisConfig) -> AnalysisResult:
    """Run the analysis that fits the table's experiment."""
    match table.mode:
        case RunMode.RUN:
            return _analyze_run(table, cfg)
        case RunMode.TREND:
            return _analyze_trend(table, cfg)
        case RunMode.ALTERNATE:
            return _analyze_alternating(table, cfg)


def write_analysis(result: AnalysisResult, run_dir: Path, bins: int = 20) -> list[str]:
    """Write stats.json and the gate, strata and ACF tables. Returns the file names written."""
    written = [save_report(result.report, run_dir / STATS_FILE).name]
    for stale in (GATE_FILE, STRATA_FILE, ACF_FILE):
        (run_dir / stale).unlink(missing_ok=True)

    if result.gate is not None:
        write_table(
            run_dir / GATE_FILE,
            ["call", "phase", "problem", "indicator", "normalized_e", "percentile", "accept"],
            (
                [
                    r.call,
                    r.phase.value,
                    r.problem_energy,
                    r.indicator_energy,
                    r.decision.normalized_e if r.decision else None,
                    r.decision.percentile if r.decision else None,
                    r.decision.accept if r.decision else None,
                ]
                for r in result.gate.records
            ),
        )
        written.append(GATE_FILE)

    if result.strata is not None:
        edges, low, high = result.strata.counts(bins)
        rows = zip(
            edges[:-1].tolist(), edges[1:].tolist(), low.tolist(), high.tolist(), strict=True
        )
        write_table(run_dir / STRATA_FILE, ["bin_left", "bin_right", "low", "high"], rows)
        written.append(STRATA_FILE)

    if result.correlations:
        write_table(run_dir / ACF_FILE, *correlation_table(result.correlations))
        written.append(ACF_FILE)
    return written


def correlation_table(
    correlations: dict[str, tuple[np.ndarray, np.ndarray]],
) -> tuple[list[str], list[list[float]]]:
    """Columns and rows of the ACF/PACF table, one row per lag."""
    names = list(correlations)
    columns = ["lag"] + [f"{n}_{kind}" for n in names for kind in ("acf", "pacf")]
    lags = min(len(a) for a, _ in correlations.values())
    rows = [
        [lag] + [float(v[lag]) for n in names for v in correlations[n]] for lag in range(lags)
    ]
    return columns, rows


def gate_and_stratify(
    table: RawTable, cfg: AnalysisConfig
) -> tuple[GateLog, StratifiedHistogram]:
    """Replay the two-phase gate over a single-problem table and stratify its gated calls.

    Raises:
        ConfigError: If the table holds more than one problem series.
    """
    if table.mode is not RunMode.RUN:
        msg = f"The gate needs a single-problem run, got a {table.mode.value} table."
        raise ConfigError(msg)
    gate = run_gate_procedure(
        table.data["problem"],
        table.data["indicator"],
        cfg.burn_in,
        tau=cfg.tau,
        quantile=cfg.tau_quantile,
        cap=cfg.history_cap,
    )
    strata = stratify(gate.problem_energies(), gate.normalized(), cfg.low_cut, cfg.high_cut)
    return gate, strata


def _analyze_run(table: RawTable, cfg: AnalysisConfig) -> AnalysisResult:
    problem, indicator = table.series("problem"), table.series("indicator")
    window = effective_window(cfg.window, len(table))
    report = analyze_series(problem, indicator, window, cfg.adf_lags)

    gate, strata = gate_and_stratify(table, cfg)
    low_mean, high_mean = strata.means()
    accepted = gate.problem_energies(accepted=True)
    gated = gate.problem_energies()

    report = report.with_values(
        calls=len(table),
        gate_threshold=gate.threshold if gate.gated() else None,
        gate_acceptance_rate=gate.acceptance_rate,
        gate_accepted_mean=float(accepted.mean()) if accepted.size else None,
        gate_mean=float(gated.mean()) if gated.size else None,
        strata_low_count=int(strata.low_set.size),
        strata_high_count=int(strata.high_set.size),
        strata_low_mean=low_mean,
        strata_high_mean=high_mean,
    )
    correlations = series_correlations([problem, indicator], cfg.acf_lags)
    return AnalysisResult(RunMode.RUN, report, gate, strata, correlations)


def _analyze_trend(table: RawTable, cfg: AnalysisConfig) -> AnalysisResult:
    problems = [table.series(c) for c in table.problems]
    indicator = table.series("indicator")
    window = effective_window(cfg.trend_window, len(table))

    with ThreadPoolExecutor(max_workers=len(problems) + 1) as pool:
        adf = list(pool.map(lambda s: _try_adf(s, cfg), [*problems, indicator]))

    values: dict[str, float | int | None] = {"calls": len(table), "window": window}
    for s, result in zip([*problems, indicator], adf, strict=True):
        values[f"{s.label}_adf_stat"] = result.stat if result else None
        values[f"{s.label}_adf_p"] = result.p if result else None

    for s in problems:
        comparison = compare_series(s, indicator, window)
        values[f"{s.label}_pearson"] = comparison.pearson
        values[f"{s.label}_rmsd"] = comparison.rmsd
        values[f"{s.label}_bin_agreement"] = comparison.bin_agreement

    smoothed = {s.label: moving_average(s, window) for s in problems}
    for a, b in combinations(smoothed, 2):
        try:
            values[f"pair_{a}_{b}_pearson"] = pearson(smoothed[a], smoothed[b])
        except SeriesError as e:
            logger.warning("Pearson of %s and %s skipped: %s", a, b, e)
            values[f"pair_{a}_{b}_pearson"] = None

    report = StatReport().with_values(**values)
    correlations = series_correlations([*problems, indicator], cfg.acf_lags)
    return AnalysisResult(RunMode.TREND, report, correlations=correlations)


def _analyze_alternating(table: RawTable, cfg: AnalysisConfig) -> AnalysisResult:
    program = table.data["program"].astype(np.int64)
    indicator = table.data["indicator"]
    first, second = indicator[program == 0], indicator[program == 1]

    values: dict[str, float | int | None] = {
        "calls": len(table),
        "program_0_calls": int(first.size),
        "program_1_calls": int(second.size),
        "program_0_indicator_mean": float(first.mean()) if first.size else None,
        "program_1_indicator_mean": float(second.mean()) if second.size else None,
    }
    try:
        ks = ks_two_sample(first, second)
        values |= {"ks_stat": ks.stat, "ks_p": ks.p}
    except SeriesError as e:
        logger.warning("KS test skipped: %s", e)

    report = StatReport().with_values(**values)
    correlations = series_correlations([table.series("indicator")], cfg.acf_lags)
    return AnalysisResult(RunMode.ALTERNATE, report, correlations=correlations)


def _try_adf(s: EnergySeries, cfg: AnalysisConfig) -> AdfResult | None:
    try:
        return adf_test(s, cfg.adf_lags)
    except SeriesError as e:
        logger.warning("ADF test on %s skipped: %s", s.label, e)
        return None


def series_correlations(
    series: list[EnergySeries], max_lag: int
) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """ACF and PACF of each series up to `max_lag`, skipping series they are undefined for."""
    out: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for s in series:
        lags = min(max_lag, len(s) - 1)
        try:
            out[s.label] = (acf(s, lags), pacf(s, lags))
        except SeriesError as e:
            logger.warning("Autocorrelation of %s skipped: %s", s.label, e)
    return out
