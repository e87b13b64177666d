"""Augmented Dickey-Fuller and two-sample Kolmogorov-Smirnov tests.

The ADF test uses the constant-only regression with a fixed lag order, matching
`statsmodels.tsa.stattools.adfuller(x, maxlag=k, regression="c", autolag=None)`. Its p-value comes
from MacKinnon's approximate response surface for one integrated series, and its critical values
from MacKinnon's 2010 finite-sample tables. The KS p-value uses the asymptotic Kolmogorov
distribution only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import numpy as np
from scipy.stats import kstwobign, norm

from annealwatch.core import SeriesError
from annealwatch.series.types import EnergySeries

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

# MacKinnon (1994) approximate p-value surface, constant-only case, one series.
_TAU_MAX = 2.74
_TAU_MIN = -18.86
_TAU_STAR = -1.61
_SMALL_P = (2.1659, 1.4412, 0.038269)
_LARGE_P = (1.7339, 0.93202, -0.12745, -0.010368)

# MacKinnon (2010) critical values, constant-only case, one series: polynomial in 1 / nobs.
_CRITICAL = {
    "1%": (-3.43035, -6.5393, -16.786, -79.433),
    "5%": (-2.86154, -2.8903, -4.234, -40.04),
    "10%": (-2.56677, -1.5384, -2.809, 0.0),
}

# Shortest usable series beyond the lag order.
_MIN_EXTRA_POINTS = 20


@dataclass(frozen=True)
class AdfResult:
    """Outcome of an augmented Dickey-Fuller test.

    A small p-value rejects the unit root, meaning the series is stationary around its mean.
    """

    stat: float
    p: float
    lags: int
    nobs: int
    critical: Mapping[str, float]

    def rejects(self, alpha: float = 0.05) -> bool:
        return self.p < alpha


@dataclass(frozen=True)
class KsResult:
    """Outcome of a two-sample Kolmogorov-Smirnov test."""

    stat: float
    p: float
    sizes: tuple[int, int]


def auto_lag(n: int) -> int:
    """Schwert's rule of thumb, floor(12 * (n / 100) ** 0.25)."""
    return math.floor(12.0 * (n / 100.0) ** 0.25)


def adf_test(s: EnergySeries, lags: int | Literal["auto"] = "auto") -> AdfResult:
    """Test `s` for a unit root.

    Fits dy[t] = a + r * y[t-1] + sum_i g_i * dy[t-i] + e by least squares. The statistic is the
    t-ratio of r. Adding a constant to the series leaves the statistic unchanged.

    Args:
        s: The series to test.
        lags: Number of lagged differences, or "auto" for `auto_lag(len(s))`.

    Raises:
        SeriesError: If the lag order is negative, the series is too short for it, or the
            regression is degenerate (for example a constant series).
    """
    n = len(s)
    k = auto_lag(n) if lags == "auto" else int(lags)
    if k < 0:
        msg = f"ADF lag order must be non-negative, got {k}."
        raise SeriesError(msg)
    if n <= _MIN_EXTRA_POINTS + k:
        msg = f"ADF with {k} lags needs more than {_MIN_EXTRA_POINTS + k} points, got {n}."
        raise SeriesError(msg)

    y = s.values
    dy = np.diff(y)
    nobs = dy.size - k

    columns = [y[k : k + nobs]]
    columns.extend(dy[k - i : k - i + nobs] for i in range(1, k + 1))
    columns.append(np.ones(nobs))
    design = np.column_stack(columns)
    target = dy[k:]

    coef, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    dof = nobs - design.shape[1]
    if rank < design.shape[1] or dof <= 0:
        msg = f"ADF regression on series '{s.label}' is degenerate."
        raise SeriesError(msg)

    resid = target - design @ coef
    sigma2 = float(resid @ resid) / dof
    pinv = np.linalg.pinv(design)
    se = math.sqrt(sigma2 * float(pinv[0] @ pinv[0]))
    if se == 0.0:
        msg = f"ADF statistic is undefined for series '{s.label}': zero residual variance."
        raise SeriesError(msg)

    stat = float(coef[0] / se)
    critical = {
        level: float(np.polynomial.polynomial.polyval(1.0 / nobs, c))
        for level, c in _CRITICAL.items()
    }
    return AdfResult(stat=stat, p=mackinnon_p(stat), lags=k, nobs=nobs, critical=critical)


def mackinnon_p(stat: float) -> float:
    """Approximate p-value of an ADF statistic, constant-only regression."""
    if stat > _TAU_MAX:
        return 1.0
    if stat < _TAU_MIN:
        return 0.0
    coefs = _SMALL_P if stat <= _TAU_STAR else _LARGE_P
    return float(norm.cdf(np.polynomial.polynomial.polyval(stat, coefs)))


def ks_two_sample(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> KsResult:
    """Two-sample Kolmogorov-Smirnov test.

    D is the largest gap between the two empirical CDFs; the p-value is the Kolmogorov survival
    function at sqrt(na * nb / (na + nb)) * D.

    Raises:
        SeriesError: If either sample is empty or holds non-finite values.
    """
    xa = np.sort(np.asarray(a, dtype=np.float64).reshape(-1))
    xb = np.sort(np.asarray(b, dtype=np.float64).reshape(-1))
    if xa.size == 0 or xb.size == 0:
        msg = f"KS test needs two non-empty samples, got sizes {xa.size} and {xb.size}."
        raise SeriesError(msg)
    if not (np.all(np.isfinite(xa)) and np.all(np.isfinite(xb))):
        msg = "KS test samples must be finite."
        raise SeriesError(msg)

    pooled = np.concatenate([xa, xb])
    cdf_a = np.searchsorted(xa, pooled, side="right") / xa.size
    cdf_b = np.searchsorted(xb, pooled, side="right") / xb.size
    d = float(np.max(np.abs(cdf_a - cdf_b)))

    effective = xa.size * xb.size / (xa.size + xb.size)
    p = float(np.clip(kstwobign.sf(math.sqrt(effective) * d), 0.0, 1.0))
    return KsResult(stat=d, p=p, sizes=(int(xa.size), int(xb.size)))
