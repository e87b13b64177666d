from __future__ import annotations

import itertools

import numpy as np
import pytest

from annealwatch.core import ConfigError, ModelError, Stream, substream
from annealwatch.qubo import Frame, QuboModel, Sample, energy
from annealwatch.sampler import (
    AnnealCallConfig,
    BackendRegistry,
    CompiledModel,
    NoiseProcessState,
    SimulatedAnnealer,
    advance_noise,
    beta_schedule,
    metropolis_sample,
    run_call,
)


@pytest.fixture
def frustrated() -> QuboModel:
    return QuboModel.from_terms(
        {0: -1.0, 1: 0.5, 2: -0.25},
        {(0, 1): 1.5, (1, 2): -2.0, (0, 2): 0.75},
    )


def test_schedule_is_geometric_ramp():
    betas = beta_schedule(2.0, 5, 0.01)
    assert betas[0] == pytest.approx(0.02)
    assert betas[-1] == pytest.approx(2.0)
    assert np.all(np.diff(betas) > 0)


@pytest.mark.parametrize(
    ("beta", "sweeps", "fraction"), [(0.0, 4, 0.1), (1.5, 4, 1.0), (1.5, 1, 0.1)]
)
def test_schedule_constant_cases(beta: float, sweeps: int, fraction: float):
    np.testing.assert_array_equal(beta_schedule(beta, sweeps, fraction), np.full(sweeps, beta))


def test_schedule_rejects_bad_input():
    with pytest.raises(ValueError):
        beta_schedule(1.0, 0, 0.5)
    with pytest.raises(ValueError):
        beta_schedule(-1.0, 3, 0.5)


def test_noise_without_volatility_stays_at_mean():
    state = NoiseProcessState.create(volatility=0.0, seed=1)
    for _ in range(10):
        state = advance_noise(state)
    assert state.current_beta == pytest.approx(1.0)
    assert state.step == 10


def test_noise_reverts_toward_mean():
    state = NoiseProcessState.create(beta0=3.0, reversion=0.5, volatility=0.0)
    nxt = advance_noise(state)
    assert nxt.current_beta == pytest.approx(2.0)


def test_noise_state_replays():
    state = NoiseProcessState.create(volatility=0.2, seed=3)
    a = advance_noise(advance_noise(state))
    b = advance_noise(advance_noise(state))
    assert a.current_beta == b.current_beta
    assert a.current_beta != state.current_beta


def test_noise_is_clamped_at_floor():
    state = NoiseProcessState.create(beta_mean=0.1, volatility=5.0, floor=0.05, seed=2)
    for _ in range(50):
        state = advance_noise(state)
        assert state.current_beta >= 0.05


def test_noise_validation():
    with pytest.raises(ConfigError):
        NoiseProcessState.create(volatility=-1.0)
    with pytest.raises(ConfigError):
        NoiseProcessState.create(beta_mean=0.0)


def test_stationary_std():
    state = NoiseProcessState.create(reversion=0.02, volatility=0.04)
    assert state.stationary_std == pytest.approx(0.04 / np.sqrt(0.04))


@pytest.mark.slow
def test_noise_long_run_mean_matches_target():
    mean, reversion, volatility, steps = 2.0, 0.2, 0.1, 100_000
    state = NoiseProcessState.create(
        beta_mean=mean, reversion=reversion, volatility=volatility, seed=17
    )
    betas = np.empty(steps)
    for i in range(steps):
        state = advance_noise(state)
        betas[i] = state.current_beta

    # The Euler step is an AR(1) with coefficient phi; its mean has a correlated standard error.
    phi = 1.0 - reversion
    variance = volatility**2 / (1.0 - phi**2)
    stderr = np.sqrt(variance * (1.0 + phi) / (1.0 - phi) / steps)
    assert abs(betas.mean() - mean) <= 3 * stderr
    assert betas.std() == pytest.approx(np.sqrt(variance), rel=0.05)


def test_call_config_validation():
    with pytest.raises(ConfigError):
        AnnealCallConfig(num_reads=0)
    with pytest.raises(ConfigError):
        AnnealCallConfig(random_sweeps=(5, 2))
    with pytest.raises(ConfigError):
        AnnealCallConfig(beta_start_fraction=0.0)


def test_run_call_is_reproducible(frustrated: QuboModel):
    cfg = AnnealCallConfig(num_reads=30, sweeps=10, seed=4)
    noise = NoiseProcessState.create(seed=1)
    a, next_a = run_call(frustrated, cfg, noise, call_index=2)
    b, next_b = run_call(frustrated, cfg, noise, call_index=2)
    np.testing.assert_array_equal(a.states, b.states)
    assert next_a.current_beta == next_b.current_beta
    c, _ = run_call(frustrated, cfg, noise, call_index=3)
    assert not np.array_equal(a.states, c.states)


def test_batch_energies_match_states(frustrated: QuboModel):
    cfg = AnnealCallConfig(num_reads=20, seed=1)
    batch, _ = run_call(frustrated, cfg, NoiseProcessState.create())
    for sample, e in zip(batch.samples, batch.energies, strict=True):
        assert energy(frustrated, sample) == pytest.approx(e)
    assert batch.mean_energy == pytest.approx(float(np.mean(batch.energies)))


def test_zero_beta_reads_are_uniform():
    model = QuboModel.from_terms({v: -5.0 for v in range(8)})
    noise = NoiseProcessState.frozen(1e-9)
    batch, _ = run_call(model, AnnealCallConfig(num_reads=500, sweeps=5, seed=2), noise)
    assert batch.states.mean() == pytest.approx(0.5, abs=0.05)


def test_high_beta_finds_ground_state():
    model = QuboModel.from_terms({0: -1.0, 1: 1.0})
    noise = NoiseProcessState.frozen(20.0)
    batch, _ = run_call(model, AnnealCallConfig(num_reads=50, sweeps=10, seed=3), noise)
    assert (batch.states[:, 0] == 1).all()
    assert (batch.states[:, 1] == 0).all()


def test_colder_calls_have_lower_energy(frustrated: QuboModel):
    cfg = AnnealCallConfig(num_reads=300, sweeps=20, seed=5)
    hot, _ = run_call(frustrated, cfg, NoiseProcessState.frozen(0.1))
    cold, _ = run_call(frustrated, cfg, NoiseProcessState.frozen(3.0))
    assert cold.mean_energy < hot.mean_energy


def test_chained_reads_continue_from_previous_state(frustrated: QuboModel):
    cfg = AnnealCallConfig(num_reads=10, sweeps=3, seed=1, reduce_intersample_correlation=False)
    batch, _ = run_call(frustrated, cfg, NoiseProcessState.create())
    assert batch.num_reads == 10


def test_random_sweeps_stay_in_range(frustrated: QuboModel):
    cfg = AnnealCallConfig(num_reads=2, seed=1, random_sweeps=(3, 6))
    noise = NoiseProcessState.create()
    used = {run_call(frustrated, cfg, noise, i)[0].sweeps_used for i in range(20)}
    assert used <= set(range(3, 7))
    assert len(used) > 1


def test_metropolis_sample_assigns_every_variable(frustrated: QuboModel):
    sample = metropolis_sample(frustrated, 1.0, 5, substream(1, Stream.READS))
    assert set(sample.assignment) == set(frustrated.variables)


def test_compiled_model_rejects_ising():
    with pytest.raises(ModelError, match="QUBO-frame"):
        CompiledModel.from_model(QuboModel.from_terms({0: 1.0}, frame=Frame.ISING))


def test_simulated_annealer_counts_calls_and_drifts(frustrated: QuboModel):
    sim = SimulatedAnnealer(NoiseProcessState.create(volatility=0.1, seed=8))
    cfg = AnnealCallConfig(num_reads=5, sweeps=5, seed=1)
    betas = [sim.sample(frustrated, cfg).beta_used for _ in range(5)]
    assert sim.calls == 5
    assert len(set(betas)) > 1


def test_simulated_annealer_reuses_compiled_program(frustrated: QuboModel):
    sim = SimulatedAnnealer()
    cfg = AnnealCallConfig(num_reads=1, sweeps=1)
    sim.sample(frustrated, cfg)
    sim.sample(frustrated, cfg)
    assert len(sim._compiled) == 1


def test_registry_creates_and_rejects():
    registry = BackendRegistry()
    assert "sim" in registry.names()
    assert isinstance(registry.create("sim"), SimulatedAnnealer)
    with pytest.raises(ConfigError, match="Unknown sampler backend"):
        registry.create("qpu-that-does-not-exist")


@pytest.mark.slow
def test_fixed_beta_reads_follow_boltzmann(frustrated: QuboModel):
    beta = 1.0
    cfg = AnnealCallConfig(num_reads=4000, sweeps=30, seed=11, beta_start_fraction=1.0)
    batch, _ = run_call(frustrated, cfg, NoiseProcessState.frozen(beta))

    states = list(itertools.product((0, 1), repeat=3))
    assignments = [Sample(dict(zip(batch.variables, s, strict=True))) for s in states]
    weights = np.exp(-beta * np.array([energy(frustrated, a) for a in assignments]))
    expected = weights / weights.sum()
    observed = np.array([np.mean((batch.states == np.array(s)).all(axis=1)) for s in states])
    np.testing.assert_allclose(observed, expected, atol=0.03)


@pytest.mark.slow
def test_zero_beta_passes_chi_square():
    from scipy.stats import chisquare

    model = QuboModel.from_terms({0: 1.0, 1: -2.0}, {(0, 1): 3.0, (2, 3): -1.0})
    cfg = AnnealCallConfig(num_reads=10_000, sweeps=3, seed=12)
    batch, _ = run_call(model, cfg, NoiseProcessState.frozen(1e-12))
    codes = batch.states.astype(np.int64) @ (1 << np.arange(4))
    counts = np.bincount(codes, minlength=16)
    assert chisquare(counts).pvalue > 0.01


@pytest.mark.slow
def test_cold_reads_find_ground_state():
    rng = np.random.default_rng(13)
    linear = {v: float(rng.uniform(-1, 1)) for v in range(6)}
    quadratic = {(u, v): float(rng.uniform(-1, 1)) for u, v in itertools.combinations(range(6), 2)}
    model = QuboModel.from_terms(linear, quadratic)
    ground = min(
        energy(model, Sample(dict(enumerate(s)))) for s in itertools.product((0, 1), repeat=6)
    )
    cfg = AnnealCallConfig(num_reads=100, sweeps=1000, seed=14)
    batch, _ = run_call(model, cfg, NoiseProcessState.frozen(50.0))
    assert np.sum(np.isclose(batch.energies, ground)) >= 99
