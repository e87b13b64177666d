"""The problem-versus-indicator comparison pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

from annealwatch.core import SeriesError
from annealwatch.log import WatchLog
from annealwatch.series.basic import (
    bin_breakdown,
    mean_align,
    minmax_normalize,
    moving_average,
    pearson,
    quartile_bin_agreement,
    rmsd,
)
from annealwatch.series.significance import adf_test
from annealwatch.series.types import StatReport

if TYPE_CHECKING:
    from annealwatch.series.types import EnergySeries

logger = WatchLog.get_logger(__name__)


@dataclass(frozen=True)
class PreparedPair:
    """The two series after smoothing and normalization, plus the aligned indicator."""

    problem: EnergySeries
    indicator: EnergySeries
    aligned: EnergySeries


def prepare_pair(problem: EnergySeries, indicator: EnergySeries, window: int) -> PreparedPair:
    """Smooth both series with the same window, normalize each into [0, 1], then shift the
    normalized indicator onto the problem's mean.

    Raises:
        SeriesError: If the series lengths differ or the window does not fit.
    """
    if len(problem) != len(indicator):
        msg = f"Problem series has {len(problem)} values but indicator has {len(indicator)}."
        raise SeriesError(msg)
    p_norm = minmax_normalize(moving_average(problem, window))
    i_norm = minmax_normalize(moving_average(indicator, window))
    return PreparedPair(p_norm, i_norm, mean_align(i_norm, p_norm))


def compare_series(problem: EnergySeries, indicator: EnergySeries, window: int = 1) -> StatReport:
    """Compare a problem series with the indicator series recorded in the same calls.

    Reports the RMSD between the normalized problem series and the mean-aligned normalized
    indicator, their Pearson correlation, and the share of positions where both land in the same
    quality quartile. All three are computed after a moving average of `window` calls. A Pearson
    coefficient that is undefined (one smoothed series is constant) is reported as None.

    Raises:
        SeriesError: If the series lengths differ or the window does not fit.
    """
    pair = prepare_pair(problem, indicator, window)
    try:
        r: float | None = pearson(pair.problem, pair.indicator)
    except SeriesError as e:
        logger.warning("Pearson correlation skipped: %s", e)
        r = None

    extra: dict[str, float | int | None] = {"window": window, "length": len(pair.problem)}
    extra.update(
        (f"bins_{name}", share)
        for name, share in bin_breakdown(pair.problem, pair.indicator).items()
    )
    return StatReport(
        pearson=r,
        rmsd=rmsd(pair.aligned, pair.problem),
        bin_agreement=quartile_bin_agreement(pair.problem, pair.indicator),
        extra=extra,
    )


def analyze_series(
    problem: EnergySeries,
    indicator: EnergySeries,
    window: int = 1,
    adf_lags: int | Literal["auto"] = "auto",
) -> StatReport:
    """Run `compare_series` and add an ADF test on each raw series.

    The problem series' test fills `adf_stat`/`adf_p`; the indicator's goes to
    `indicator_adf_stat`/`indicator_adf_p`. A series too short for the test gets None.
    """
    report = compare_series(problem, indicator, window)
    values: dict[str, float | int | None] = {}
    for prefix, series in (("", problem), ("indicator_", indicator)):
        try:
            result = adf_test(series, adf_lags)
        except SeriesError as e:
            logger.warning("ADF test on %s series skipped: %s", series.label or "unnamed", e)
            values |= {f"{prefix}adf_stat": None, f"{prefix}adf_p": None}
            continue
        values |= {
            f"{prefix}adf_stat": result.stat,
            f"{prefix}adf_p": result.p,
            f"{prefix}adf_lags": result.lags,
        }
    return report.with_values(**values)
