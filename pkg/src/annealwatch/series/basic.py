"""Smoothing, normalization, alignment and pairwise comparison of energy series."""

from __future__ import annotations

import numpy as np

from annealwatch.core import SeriesError
from annealwatch.series.types import EnergySeries, QualityBin


def moving_average(s: EnergySeries, w: int) -> EnergySeries:
    """Trailing-window means without padding: element i is mean(values[i:i + w]).

    The result has N - w + 1 elements.

    Raises:
        SeriesError: If w < 1 or w > N.
    """
    if not 1 <= w <= len(s):
        msg = f"Moving-average window must lie in [1, {len(s)}], got {w}."
        raise SeriesError(msg)
    if w == 1:
        return s
    kernel = np.full(w, 1.0 / w)
    return EnergySeries(np.convolve(s.values, kernel, mode="valid"), s.label)


def minmax_normalize(s: EnergySeries) -> EnergySeries:
    """Scale into [0, 1] by (v - min) / (max - min). A constant series maps to all 0.5."""
    low, high = float(s.values.min()), float(s.values.max())
    if high == low:
        return EnergySeries(np.full(len(s), 0.5), s.label)
    return EnergySeries((s.values - low) / (high - low), s.label)


def mean_align(x: EnergySeries, y: EnergySeries) -> EnergySeries:
    """Shift x so its mean equals the mean of y.

    Raises:
        SeriesError: If the lengths differ.
    """
    _same_length(x, y)
    return EnergySeries(x.values - (x.values.mean() - y.values.mean()), x.label)


def rmsd(x: EnergySeries, y: EnergySeries) -> float:
    """Root-mean-square deviation sqrt(mean((x - y)^2)).

    Raises:
        SeriesError: If the lengths differ.
    """
    _same_length(x, y)
    return float(np.sqrt(np.mean((x.values - y.values) ** 2)))


def pearson(x: EnergySeries, y: EnergySeries) -> float:
    """Sample Pearson correlation coefficient.

    Raises:
        SeriesError: If the lengths differ, N < 2, or either series is constant.
    """
    _same_length(x, y)
    if len(x) < 2:
        msg = "Pearson correlation needs at least two points."
        raise SeriesError(msg)
    dx = x.values - x.values.mean()
    dy = y.values - y.values.mean()
    denom = float(np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))
    if denom == 0.0:
        constant = x.label if np.dot(dx, dx) == 0 else y.label
        msg = f"Pearson correlation is undefined: series '{constant}' is constant."
        raise SeriesError(msg)
    return float(np.clip(np.dot(dx, dy) / denom, -1.0, 1.0))


def quartile_bins(s: EnergySeries) -> np.ndarray:
    """Quality class of each value of a normalized series, as `QualityBin` integers.

    Raises:
        SeriesError: If any value is outside [0, 1].
    """
    v = s.values
    if v.min() < 0.0 or v.max() > 1.0:
        msg = f"Series '{s.label}' must be normalized to [0, 1] before binning."
        raise SeriesError(msg)
    return np.minimum(np.floor(4.0 * v), float(QualityBin.WORST)).astype(np.int8)


def quartile_bin_agreement(x_norm: EnergySeries, y_norm: EnergySeries) -> float:
    """Fraction of positions where both normalized series fall into the same quality class.

    Raises:
        SeriesError: On length mismatch or values outside [0, 1].
    """
    _same_length(x_norm, y_norm)
    return float(np.mean(quartile_bins(x_norm) == quartile_bins(y_norm)))


def bin_breakdown(x_norm: EnergySeries, y_norm: EnergySeries) -> dict[str, float]:
    """Per-class proportions behind the agreement figure.

    For each class, the share of positions where both series are in that class
    (`same_<class>`), plus the overall `same` and `different` shares.
    """
    _same_length(x_norm, y_norm)
    bx, by = quartile_bins(x_norm), quartile_bins(y_norm)
    same = bx == by
    result = {f"same_{b.name.lower()}": float(np.mean(same & (bx == b))) for b in QualityBin}
    result["same"] = float(np.mean(same))
    result["different"] = 1.0 - result["same"]
    return result


def _same_length(x: EnergySeries, y: EnergySeries) -> None:
    if len(x) != len(y):
        msg = f"Series '{x.label}' has {len(x)} values but '{y.label}' has {len(y)}."
        raise SeriesError(msg)
