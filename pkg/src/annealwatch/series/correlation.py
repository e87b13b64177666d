"""Sample autocorrelation and partial autocorrelation."""

from __future__ import annotations

import numpy as np

from annealwatch.core import SeriesError
from annealwatch.series.types import EnergySeries


def acf(s: EnergySeries, max_lag: int) -> np.ndarray:
    """Autocorrelations at lags 0..max_lag.

    Uses the biased autocovariance estimate (dividing by N at every lag), which keeps the values
    in [-1, 1] and the implied autocovariance matrix positive semi-definite.

    Raises:
        SeriesError: If max_lag is negative, max_lag >= N, or the series is constant.
    """
    n = len(s)
    if not 0 <= max_lag < n:
        msg = f"max_lag must lie in [0, {n - 1}] for a series of length {n}, got {max_lag}."
        raise SeriesError(msg)
    d = s.values - s.values.mean()
    c0 = float(np.dot(d, d))
    if c0 == 0.0:
        msg = f"Autocorrelation of constant series '{s.label}' is undefined."
        raise SeriesError(msg)
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    for k in range(1, max_lag + 1):
        out[k] = np.dot(d[: n - k], d[k:]) / c0
    return out


def pacf(s: EnergySeries, max_lag: int) -> np.ndarray:
    """Partial autocorrelations at lags 0..max_lag by the Durbin-Levinson recursion.

    Raises:
        SeriesError: As for `acf`.
    """
    rho = acf(s, max_lag)
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    if max_lag == 0:
        return out

    phi = np.zeros(max_lag + 1)
    phi[1] = rho[1]
    out[1] = rho[1]
    v = 1.0 - rho[1] ** 2
    for k in range(2, max_lag + 1):
        if v <= 0.0:
            out[k:] = 0.0
            break
        reflection = (rho[k] - np.dot(phi[1:k], rho[k - 1 : 0 : -1])) / v
        previous = phi[1:k].copy()
        phi[1:k] = previous - reflection * previous[::-1]
        phi[k] = reflection
        out[k] = reflection
        v *= 1.0 - reflection**2
    return np.clip(out, -1.0, 1.0)


def white_noise_band(n: int, width: float = 4.0) -> float:
    """Half-width `width / sqrt(n)` of the band white-noise correlations stay inside."""
    return width / np.sqrt(n)
