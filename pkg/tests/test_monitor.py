from __future__ import annotations

import json

import numpy as np
import pytest

from annealwatch.core import ConfigError, FileFormatError, NotReadyError, SeriesError
from annealwatch.monitor import (
    STORE_SCHEMA,
    BurnInStore,
    GatePhase,
    annotate,
    calibrate_tau,
    gate,
    load_store,
    normalize_against,
    observe,
    percentile_rank,
    run_gate_procedure,
    save_store,
    stratify,
)


def filled(*values: float, burn_in: int | None = None, cap: int | None = None) -> BurnInStore:
    store = BurnInStore(burn_in or len(values), cap)
    for v in values:
        observe(store, v)
    return store


def shared_drift(n: int, seed: int, noise: float = 0.3) -> tuple[np.ndarray, np.ndarray]:
    """Problem and indicator energies that both follow one mean-reverting drift."""
    rng = np.random.default_rng(seed)
    drift = np.empty(n)
    drift[0] = 0.0
    for t in range(1, n):
        drift[t] = 0.98 * drift[t - 1] + 0.2 * rng.standard_normal()
    problem = -10.0 + drift + noise * rng.standard_normal(n)
    indicator = -3.0 + 0.5 * drift + 0.5 * noise * rng.standard_normal(n)
    return problem, indicator


class TestBurnInStore:
    def test_first_value_sets_both_bounds(self):
        store = filled(2.5)
        assert len(store) == 1
        assert store.low == store.high == 2.5

    def test_bounds(self):
        store = filled(3, 1, 2)
        assert (store.low, store.high) == (1, 3)
        assert store.ready

    def test_cap_evicts_oldest_and_tracks_bounds(self):
        store = filled(5, 1, 2, 3, burn_in=2, cap=3)
        assert list(store.history) == [1, 2, 3]
        assert (store.low, store.high) == (1, 3)
        observe(store, 2.5)
        assert (store.low, store.high) == (2, 3)

    def test_validation(self):
        with pytest.raises(ConfigError):
            BurnInStore(0)
        with pytest.raises(ConfigError, match="shorter than the burn-in"):
            BurnInStore(10, cap=5)

    def test_degenerate(self):
        assert BurnInStore(1).degenerate
        assert filled(4, 4, 4).degenerate
        assert not filled(4, 5).degenerate


class TestRanking:
    def test_percentile_extremes(self):
        store = filled(1, 2, 3, 4)
        assert percentile_rank(store, 0) == 0.0
        assert percentile_rank(store, 9) == 1.0
        assert annotate(store, 2.5) == 0.5

    def test_ties_count_half(self):
        assert percentile_rank(filled(1, 2, 2, 3), 2) == pytest.approx(0.5)

    def test_not_ready(self):
        store = filled(1, 2, burn_in=3)
        with pytest.raises(NotReadyError, match="2 values stored, 3 needed"):
            percentile_rank(store, 1.5)

    def test_normalize(self):
        store = filled(1, 2, 3, 4)
        assert normalize_against(store, 2.5) == pytest.approx(0.5)
        assert normalize_against(store, -10) == 0.0
        assert normalize_against(store, 10) == 1.0

    def test_normalize_degenerate(self):
        with pytest.raises(NotReadyError, match="degenerate"):
            normalize_against(filled(2, 2), 2)


class TestGate:
    def test_accepts_below_threshold(self):
        store = filled(0, 10)
        assert gate(store, 3, 0.5).accept
        rejected = gate(store, 7, 0.5)
        assert not rejected.accept
        assert rejected.normalized_e == pytest.approx(0.7)
        assert rejected.threshold == 0.5

    def test_threshold_is_strict(self):
        assert not gate(filled(0, 10), 5, 0.5).accept

    @pytest.mark.parametrize("tau", [0.0, 1.0, -0.2])
    def test_threshold_range(self, tau: float):
        with pytest.raises(ConfigError):
            gate(filled(0, 1), 0.5, tau)

    def test_calibrate(self):
        store = filled(0, 1, 2, 3, 4)
        assert calibrate_tau(store) == pytest.approx(0.5)
        assert 0.0 < calibrate_tau(filled(0, 0, 0, 1), 0.1) < 1.0
        with pytest.raises(ConfigError):
            calibrate_tau(store, 1.0)
        with pytest.raises(NotReadyError):
            calibrate_tau(filled(3, 3), 0.5)


class TestProcedure:
    def test_no_decision_during_burn_in(self):
        problem, indicator = shared_drift(100, seed=1)
        log = run_gate_procedure(problem, indicator, burn_in=10)
        assert all(r.phase is GatePhase.BURN_IN for r in log.records[:10])
        assert all(r.decision is None for r in log.records[:10])
        assert all(r.decision is not None for r in log.records[10:])
        assert len(log.gated()) == 90
        assert 0.0 < log.threshold < 1.0

    def test_fixed_threshold_is_kept(self):
        problem, indicator = shared_drift(50, seed=2)
        log = run_gate_procedure(problem, indicator, burn_in=5, tau=0.3)
        assert log.threshold == 0.3
        for r in log.gated():
            assert r.decision.accept == (r.decision.normalized_e < 0.3)

    def test_constant_history_extends_burn_in(self):
        log = run_gate_procedure([1.0] * 6, [2.0, 2.0, 2.0, 2.0, 3.0, 2.5], burn_in=2)
        phases = [r.phase for r in log.records]
        assert phases == [GatePhase.BURN_IN] * 5 + [GatePhase.GATE]

    def test_everything_burn_in(self):
        log = run_gate_procedure([1.0, 2.0], [1.0, 2.0], burn_in=5)
        assert log.gated() == ()
        assert np.isnan(log.threshold)
        assert log.acceptance_rate == 0.0

    def test_continues_from_store(self):
        store = filled(0.0, 10.0, burn_in=2)
        log = run_gate_procedure([1.0, 1.0], [2.0, 9.0], burn_in=50, tau=0.5, store=store)
        assert [r.decision.accept for r in log.gated()] == [True, False]
        assert len(store) == 4

    def test_errors(self):
        with pytest.raises(SeriesError):
            run_gate_procedure([1.0], [1.0, 2.0], burn_in=1)
        with pytest.raises(ConfigError):
            run_gate_procedure([1.0], [1.0], burn_in=1, tau=2.0)

    def test_accepted_calls_are_better_on_average(self):
        wins = 0
        for seed in range(20):
            problem, indicator = shared_drift(5000, seed=100 + seed)
            log = run_gate_procedure(problem, indicator, burn_in=10)
            accepted = log.problem_energies(accepted=True)
            wins += accepted.mean() < log.problem_energies().mean()

            strata = stratify(log.problem_energies(), log.normalized())
            low_mean, high_mean = strata.means()
            assert low_mean is not None and high_mean is not None
            assert low_mean < high_mean
        assert wins >= 19


class TestStratify:
    def test_split(self):
        strata = stratify([1, 2, 3, 4, 5], [0.0, 0.2, 0.5, 0.8, 1.0])
        assert strata.low_set.tolist() == [1, 2]
        assert strata.high_set.tolist() == [4, 5]
        assert strata.means() == (1.5, 4.5)

    def test_zero_indicator_goes_low(self):
        strata = stratify([1, 2, 3], [0, 0, 0])
        assert strata.low_set.size == 3
        assert strata.high_set.size == 0
        assert strata.means() == (2.0, None)

    def test_shared_edges(self):
        strata = stratify([1, 2, 9, 10], [0.1, 0.1, 0.9, 0.9])
        edges, low, high = strata.counts(bins=3)
        assert edges[0] == 1 and edges[-1] == 10
        assert low.sum() == 2 and high.sum() == 2

    def test_empty_edges(self):
        strata = stratify([1.0], [0.5])
        np.testing.assert_allclose(strata.edges(4), [0, 0.25, 0.5, 0.75, 1])

    def test_errors(self):
        with pytest.raises(SeriesError):
            stratify([1, 2], [0.1])
        with pytest.raises(SeriesError, match="cuts"):
            stratify([1], [0.1], low=0.8, high=0.2)


class TestStoreFiles:
    def test_round_trip_keeps_cap(self, tmp_path):
        store = filled(3, 1, 2, burn_in=2, cap=5)
        loaded = load_store(save_store(store, tmp_path / "store.json"))
        assert (loaded.burn_in, loaded.cap) == (2, 5)
        assert list(loaded.history) == [3, 1, 2]
        assert (loaded.low, loaded.high) == (1, 3)

    def test_document_has_schema(self, tmp_path):
        path = save_store(filled(1, 2), tmp_path / "store.json")
        assert json.loads(path.read_text())["schema"] == STORE_SCHEMA

    @pytest.mark.parametrize(
        "text",
        [
            "{",
            '{"burn_in": 2}',
            json.dumps({"schema": STORE_SCHEMA}),
            json.dumps({"schema": STORE_SCHEMA, "burn_in": 3, "cap": 1}),
        ],
    )
    def test_bad_documents(self, tmp_path, text: str):
        path = tmp_path / "store.json"
        path.write_text(text)
        with pytest.raises(FileFormatError):
            load_store(path)
