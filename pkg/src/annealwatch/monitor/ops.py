"""Burn-in, percentile annotation, threshold gating and energy stratification."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from annealwatch.core import ConfigError, NotReadyError, SeriesError, plural
from annealwatch.log import WatchLog
from annealwatch.monitor.types import (
    BurnInStore,
    GateDecision,
    GateLog,
    GatePhase,
    GateRecord,
    StratifiedHistogram,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = WatchLog.get_logger(__name__)


def observe(store: BurnInStore, indicator_energy: float) -> BurnInStore:
    """Record one call's indicator energy and return the store."""
    store.append(indicator_energy)
    return store


def percentile_rank(store: BurnInStore, value: float) -> float:
    """Share of stored values below `value`, counting ties as half.

    Raises:
        NotReadyError: If the burn-in is not complete.
    """
    _require_ready(store)
    history = store.as_array()
    below = np.count_nonzero(history < value)
    ties = np.count_nonzero(history == value)
    return float((below + 0.5 * ties) / history.size)


def annotate(store: BurnInStore, indicator_energy: float) -> float:
    """Quality estimate of a call as the percentile rank of its indicator energy.

    Lower is better: 0 means the indicator came out below everything seen so far.
    """
    return percentile_rank(store, indicator_energy)


def normalize_against(store: BurnInStore, value: float) -> float:
    """Place `value` on the store's [min, max] range, clamped to [0, 1].

    Raises:
        NotReadyError: If the burn-in is incomplete or every stored value is equal.
    """
    _require_ready(store)
    if store.degenerate:
        msg = f"Indicator history is degenerate: all {len(store)} values equal {store.low}."
        raise NotReadyError(msg)
    return float(np.clip((value - store.low) / (store.high - store.low), 0.0, 1.0))


def gate(store: BurnInStore, indicator_energy: float, tau: float) -> GateDecision:
    """Accept a call's problem samples when its normalized indicator energy is below `tau`.

    Raises:
        ConfigError: If `tau` is outside (0, 1).
        NotReadyError: If the burn-in is incomplete or the history is degenerate.
    """
    _check_tau(tau)
    e = normalize_against(store, indicator_energy)
    return GateDecision(
        accept=e < tau,
        normalized_e=e,
        percentile=percentile_rank(store, indicator_energy),
        threshold=tau,
    )


def calibrate_tau(store: BurnInStore, quantile: float = 0.5) -> float:
    """Pick a threshold as the `quantile` of the store's own normalized history.

    The result is nudged into the open interval (0, 1) if the quantile sits on an end.

    Raises:
        ConfigError: If `quantile` is outside (0, 1).
        NotReadyError: If the burn-in is incomplete or the history is degenerate.
    """
    if not 0.0 < quantile < 1.0:
        msg = f"Calibration quantile must lie in (0, 1), got {quantile}."
        raise ConfigError(msg)
    _require_ready(store)
    if store.degenerate:
        msg = "Cannot calibrate a threshold from a constant indicator history."
        raise NotReadyError(msg)
    normalized = (store.as_array() - store.low) / (store.high - store.low)
    tau = float(np.quantile(normalized, quantile))
    return float(np.clip(tau, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0)))


def run_gate_procedure(
    problem_energies: Sequence[float] | np.ndarray,
    indicator_energies: Sequence[float] | np.ndarray,
    burn_in: int,
    tau: float | None = None,
    quantile: float = 0.5,
    cap: int | None = None,
    store: BurnInStore | None = None,
) -> GateLog:
    """Replay a run through the two-phase procedure, one call at a time.

    The first calls only fill the history until it holds `burn_in` values. After that, each
    call is first judged against the history so far and then added to it, so the normalization
    range keeps widening as new extremes arrive. If the history is still constant when a call
    must be judged, that call is treated as burn-in.

    Args:
        problem_energies: Per-call mean problem energies.
        indicator_energies: Per-call mean indicator energies, same length.
        burn_in: Number of values the history must hold before gating starts.
        tau: Fixed threshold. When None, it is calibrated once from the history at the end of the
            burn-in, at `quantile`.
        quantile: Calibration quantile used when `tau` is None.
        cap: Optional ring-buffer size for the history.
        store: An existing history to continue from (for example one loaded from disk). Its
            burn-in length and cap take precedence.

    Raises:
        SeriesError: If the two sequences differ in length.
        ConfigError: If `tau` or `quantile` is out of range.
    """
    problem = np.asarray(problem_energies, dtype=np.float64)
    indicator = np.asarray(indicator_energies, dtype=np.float64)
    if problem.shape != indicator.shape:
        msg = f"Got {problem.size} problem energies but {indicator.size} indicator energies."
        raise SeriesError(msg)
    if tau is not None:
        _check_tau(tau)
    store = store if store is not None else BurnInStore(burn_in, cap)

    threshold = tau
    records: list[GateRecord] = []
    for call, (p, e) in enumerate(zip(problem.tolist(), indicator.tolist(), strict=True)):
        if not store.ready or store.degenerate:
            records.append(GateRecord(call, GatePhase.BURN_IN, p, e))
            observe(store, e)
            continue
        if threshold is None:
            threshold = calibrate_tau(store, quantile)
            logger.info(
                "Burn-in complete after %s; threshold calibrated to %.4f.",
                plural("call", call, with_count=True),
                threshold,
            )
        records.append(GateRecord(call, GatePhase.GATE, p, e, gate(store, e, threshold)))
        observe(store, e)

    log = GateLog(tuple(records), threshold if threshold is not None else float("nan"), burn_in)
    gated = len(log.gated())
    if gated:
        logger.info(
            "Gated %s, accepted %.1f%%.",
            plural("call", gated, with_count=True),
            100.0 * log.acceptance_rate,
        )
    else:
        logger.warning("No call passed the burn-in; the gate log holds no decisions.")
    return log


def stratify(
    problem_energies: Sequence[float] | np.ndarray,
    indicator_e_norm: Sequence[float] | np.ndarray,
    low: float = 0.2,
    high: float = 0.8,
) -> StratifiedHistogram:
    """Split problem energies by their call's normalized indicator energy.

    Calls with e <= `low` form the low-noise set, calls with e >= `high` the high-noise set.

    Raises:
        SeriesError: If the lengths differ or the cuts are not 0 <= low < high <= 1.
    """
    problem = np.asarray(problem_energies, dtype=np.float64)
    e = np.asarray(indicator_e_norm, dtype=np.float64)
    if problem.shape != e.shape:
        msg = f"Got {problem.size} problem energies but {e.size} indicator values."
        raise SeriesError(msg)
    if not 0.0 <= low < high <= 1.0:
        msg = f"Stratification cuts must satisfy 0 <= low < high <= 1, got ({low}, {high})."
        raise SeriesError(msg)
    return StratifiedHistogram(problem[e <= low], problem[e >= high], (low, high))


def _require_ready(store: BurnInStore) -> None:
    if not store.ready:
        msg = (
            f"Burn-in incomplete: {plural('value', len(store), with_count=True)} stored, "
            f"{store.burn_in} needed."
        )
        raise NotReadyError(msg)


def _check_tau(tau: float) -> None:
    if not 0.0 < tau < 1.0:
        msg = f"Threshold must lie in (0, 1), got {tau}."
        raise ConfigError(msg)
