"""Tidy CSV tables for plotting a run, derived from its raw table and analysis settings.

Each plot id writes `plots/<id>.csv` inside the run directory:

    timeseries      normalized moving averages, one `<series>_norm` column per series
    timeseries_raw  per-call energies next to their moving averages (empty until the window fills)
    histogram       low- and high-noise strata counts over shared bin edges (single-problem runs)
    bins            quality-quartile agreement shares of each problem series with the indicator
    acf             ACF and PACF of every series, with the white-noise band
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

from annealwatch.core import ConfigError, plural
from annealwatch.experiment.analysis import (
    correlation_table,
    effective_window,
    gate_and_stratify,
    series_correlations,
)
from annealwatch.experiment.artifacts import CONFIG_FILE, RAW_FILE, read_raw, write_table
from annealwatch.experiment.config import load_config
from annealwatch.log import WatchLog
from annealwatch.paths import RunPaths
from annealwatch.series import bin_breakdown, moving_average, prepare_pair, white_noise_band

if TYPE_CHECKING:
    from collections.abc import Callable

    from annealwatch.experiment.artifacts import RawTable
    from annealwatch.experiment.config import AnalysisConfig, ExperimentConfig

logger = WatchLog.get_logger(__name__)

PLOTS_DIR = "plots"

type Table = tuple[list[str], list[list[object]]]


def export_plot_data(
    run_dir: Path | str,
    which: str | list[str],
    cfg: ExperimentConfig | None = None,
    out_dir: Path | str | None = None,
) -> list[Path]:
    """Write the tables behind one or more plots.

    Args:
        run_dir: The run directory, holding raw.csv and config.yaml.
        which: A plot id, a list of them, or "all".
        cfg: Analysis settings; defaults to the run's own config.yaml.
        out_dir: Where to write; defaults to `<run_dir>/plots`.

    Returns:
        The files written, in the order requested.

    Raises:
        ConfigError: If a plot id is unknown, or it does not apply to the run's experiment.
    """
    ids = list(PLOTS) if which == "all" else [which] if isinstance(which, str) else list(which)
    unknown = [w for w in ids if w not in PLOTS]
    if unknown:
        msg = f"Unknown plot id '{unknown[0]}'. Known ids: {', '.join(PLOTS)}."
        raise ConfigError(msg)

    directory = RunPaths(create_dirs=False).existing_run(run_dir)
    if cfg is None:
        cfg = load_config(directory / CONFIG_FILE, check_files=False)
    table = read_raw(directory / RAW_FILE)
    target = Path(out_dir) if out_dir is not None else directory / PLOTS_DIR
    target.mkdir(parents=True, exist_ok=True)

    written = []
    for plot in ids:
        columns, rows = PLOTS[plot](table, cfg.analysis)
        written.append(write_table(target / f"{plot}.csv", columns, rows))
        logger.debug("Wrote %s (%s).", written[-1].name, plural("row", len(rows), with_count=True))
    logger.info("Exported %s to %s.", ", ".join(ids), target)
    return written


def _window(table: RawTable, cfg: AnalysisConfig) -> int:
    window = cfg.window if len(table.problems) == 1 else cfg.trend_window
    return effective_window(window, len(table))


def _timeseries(table: RawTable, cfg: AnalysisConfig) -> Table:
    window = _window(table, cfg)
    indicator = table.series("indicator")
    pairs = [prepare_pair(table.series(c), indicator, window) for c in table.problems]
    columns = [f"{c}_norm" for c in table.problems] + ["indicator_norm"]
    values = [p.problem.values for p in pairs] + [pairs[0].indicator.values]
    return columns, [list(row) for row in zip(*(v.tolist() for v in values), strict=True)]


def _timeseries_raw(table: RawTable, cfg: AnalysisConfig) -> Table:
    window = _window(table, cfg)
    names = [*table.problems, "indicator"]
    columns = ["call"] + [f"{n}{suffix}" for n in names for suffix in ("", "_ma")]
    smoothed = {n: moving_average(table.series(n), window).values for n in names}

    rows: list[list[object]] = []
    for i, call in enumerate(table.data["call"].astype(int).tolist()):
        row: list[object] = [call]
        for n in names:
            # A moving average is attached to the last call of its window.
            ma = float(smoothed[n][i - window + 1]) if i >= window - 1 else None
            row += [float(table.data[n][i]), ma]
        rows.append(row)
    return columns, rows


def _histogram(table: RawTable, cfg: AnalysisConfig) -> Table:
    _, strata = gate_and_stratify(table, cfg)
    edges, low, high = strata.counts(cfg.histogram_bins)
    rows = [
        [float(edges[i]), float(edges[i + 1]), int(low[i]), int(high[i])]
        for i in range(len(low))
    ]
    return ["bin_left", "bin_right", "low", "high"], rows


def _bins(table: RawTable, cfg: AnalysisConfig) -> Table:
    window = _window(table, cfg)
    indicator = table.series("indicator")
    rows: list[list[object]] = []
    for c in table.problems:
        pair = prepare_pair(table.series(c), indicator, window)
        shares = bin_breakdown(pair.problem, pair.indicator)
        rows += [[c, name, share] for name, share in shares.items()]
    return ["series", "class", "share"], rows


def _acf(table: RawTable, cfg: AnalysisConfig) -> Table:
    series = [table.series(c) for c in [*table.problems, "indicator"]]
    correlations = series_correlations(series, cfg.acf_lags)
    if not correlations:
        msg = "No series has a defined autocorrelation."
        raise ConfigError(msg)
    columns, rows = correlation_table(correlations)
    band = white_noise_band(len(table))
    return [*columns, "band"], [[*row, band] for row in rows]


PLOTS: dict[str, Callable[[RawTable, AnalysisConfig], Table]] = {
    "timeseries": _timeseries,
    "timeseries_raw": _timeseries_raw,
    "histogram": _histogram,
    "bins": _bins,
    "acf": _acf,
}
