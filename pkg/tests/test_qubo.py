from __future__ import annotations

import itertools

import numpy as np
import pytest

from annealwatch.core import EvaluationError, FileFormatError, ModelError
from annealwatch.qubo import (
    Frame,
    QuboModel,
    Sample,
    autoscale,
    combine_with_indicator,
    energies,
    energy,
    load_qubo,
    qubo_ising_convert,
    save_qubo,
)


def test_pairs_are_canonical_and_summed():
    model = QuboModel.from_terms(quadratic={(3, 1): 1.0, (1, 3): 0.5})
    assert dict(model.quadratic) == {(1, 3): 1.5}
    assert model.variables == frozenset({1, 3})


@pytest.mark.parametrize(
    "terms",
    [
        {"quadratic": {(2, 2): 1.0}},
        {"linear": {0: float("nan")}},
        {"linear": {-1: 1.0}},
    ],
)
def test_invalid_terms_are_rejected(terms: dict):
    with pytest.raises(ModelError):
        QuboModel.from_terms(**terms)


def test_energy_of_hand_computed_sample(small_model: QuboModel):
    # -1*1 + 2*1 + 0.5*0 - 3*1*1 + 1.5*1*0
    assert energy(small_model, Sample({0: 1, 1: 1, 2: 0})) == pytest.approx(-2.0)


def test_energy_requires_every_variable(small_model: QuboModel):
    with pytest.raises(EvaluationError) as info:
        energy(small_model, Sample({0: 1, 1: 0}))
    assert info.value.variable == 2


def test_energy_rejects_frame_mismatch(small_model: QuboModel):
    with pytest.raises(ModelError, match="frame"):
        energy(small_model, Sample({0: 1, 1: -1, 2: 1}, Frame.ISING))


def test_sample_rejects_values_outside_frame():
    with pytest.raises(ModelError):
        Sample({0: 2})


def test_batch_energies_match_single_evaluation(small_model: QuboModel):
    order = [2, 0, 1]
    states = np.array(list(itertools.product((0, 1), repeat=3)))
    batch = energies(small_model, states, order)
    for row, e in zip(states, batch, strict=True):
        sample = Sample({v: int(x) for v, x in zip(order, row, strict=True)})
        assert e == pytest.approx(energy(small_model, sample))


def test_frame_conversion_preserves_energies(small_model: QuboModel):
    ising, offset = qubo_ising_convert(small_model, Frame.ISING)
    back, back_offset = qubo_ising_convert(ising, Frame.QUBO)
    for bits in itertools.product((0, 1), repeat=3):
        x = Sample(dict(enumerate(bits)))
        s = x.to_frame(Frame.ISING)
        assert energy(small_model, x) == pytest.approx(energy(ising, s) + offset)
        assert energy(ising, s) == pytest.approx(energy(back, x) + back_offset)


def test_conversion_to_own_frame_is_identity(small_model: QuboModel):
    same, offset = qubo_ising_convert(small_model, Frame.QUBO)
    assert same is small_model
    assert offset == 0.0


def test_autoscale_fits_device_ranges():
    model = QuboModel.from_terms({0: 4.0, 1: -1.0}, {(0, 1): 2.0})
    scaled, factor = autoscale(model)
    assert factor == pytest.approx(0.25)
    assert scaled.max_abs_linear() == pytest.approx(1.0)
    assert scaled.max_abs_quadratic() <= 2.0


def test_autoscale_quadratic_bound_can_be_tight():
    scaled, factor = autoscale(QuboModel.from_terms({0: 0.5}, {(0, 1): 8.0}))
    assert factor == pytest.approx(0.25)
    assert scaled.max_abs_quadratic() == pytest.approx(2.0)


def test_autoscale_leaves_zero_model_alone():
    model = QuboModel.empty([0, 1])
    assert autoscale(model) == (model, 1.0)


def test_combine_scales_indicator_to_problem_range():
    problem = QuboModel.from_terms({0: -1, 1: -1}, {(0, 1): 2})
    indicator = QuboModel.from_terms({10: 0.5}, {(10, 11): -0.25})
    program = combine_with_indicator(problem, indicator)
    assert program.scale_constant == pytest.approx(4.0)
    assert program.combined.linear[10] == pytest.approx(2.0)
    assert program.combined.quadratic[10, 11] == pytest.approx(-1.0)
    assert not any(u < 10 <= v for u, v in program.combined.quadratic)

    x = Sample({0: 1, 1: 0, 10: 1, 11: 1})
    assert energy(program.combined, x) == pytest.approx(
        energy(problem, x) + program.scale_constant * energy(indicator, x)
    )


def test_combine_rejects_shared_variables_and_zero_indicator():
    problem = QuboModel.from_terms({0: 1.0})
    with pytest.raises(ModelError, match="disjoint"):
        combine_with_indicator(problem, QuboModel.from_terms({0: 1.0}))
    with pytest.raises(ModelError, match="no nonzero"):
        combine_with_indicator(problem, QuboModel.empty([5]))


def test_union_rejects_overlap():
    a = QuboModel.from_terms({0: 1.0})
    with pytest.raises(ModelError, match="share"):
        QuboModel.union(a, QuboModel.from_terms({0: 2.0, 1: 1.0}))


def test_relabel_and_restrict(small_model: QuboModel):
    moved = small_model.relabeled({0: 10, 1: 11, 2: 12})
    assert dict(moved.quadratic) == {(10, 11): -3.0, (11, 12): 1.5}
    sub = small_model.restricted([0, 1])
    assert dict(sub.quadratic) == {(0, 1): -3.0}
    with pytest.raises(ModelError):
        small_model.relabeled({0: 1, 1: 1, 2: 2})


def test_qubo_file_keeps_isolated_variables(tmp_path):
    model = QuboModel.from_terms({0: 1.25}, {(0, 2): -0.5}, variables=[7], frame=Frame.ISING)
    loaded = load_qubo(save_qubo(model, tmp_path / "m.qubo"))
    assert loaded.variables == model.variables
    assert loaded.frame is Frame.ISING
    assert dict(loaded.quadratic) == dict(model.quadratic)


def test_malformed_qubo_file_reports_line(tmp_path):
    path = tmp_path / "bad.qubo"
    path.write_text("0 0 1.0\n0 1\n", encoding="utf-8")
    with pytest.raises(FileFormatError) as info:
        load_qubo(path)
    assert info.value.line == 2


def test_combine_rejects_zero_problem():
    with pytest.raises(ModelError, match="Problem has no nonzero"):
        combine_with_indicator(QuboModel.empty([0, 1]), QuboModel.from_terms({5: 1.0}))


def _random_model(rng: np.random.Generator, variables: list[int]) -> QuboModel:
    linear = {v: float(rng.uniform(-2, 2)) for v in variables}
    quadratic = {
        pair: float(rng.uniform(-2, 2))
        for pair in itertools.combinations(variables, 2)
        if rng.random() < 0.6
    }
    return QuboModel.from_terms(linear, quadratic, variables=variables)


def _all_states(n: int) -> np.ndarray:
    return np.array(list(itertools.product((0, 1), repeat=n)))


def test_combined_energy_is_additive_and_minimized_jointly():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        n_p, n_i = rng.integers(1, 5, size=2)
        p_vars, i_vars = list(range(n_p)), list(range(10, 10 + n_i))
        problem, indicator = _random_model(rng, p_vars), _random_model(rng, i_vars)
        program = combine_with_indicator(problem, indicator)
        assert program.scale_constant == (
            problem.max_abs_coefficient() / indicator.max_abs_coefficient()
        )

        order = p_vars + i_vars
        states = _all_states(len(order))
        joint = energies(program.combined, states, order)
        e_p = energies(problem, states[:, :n_p], p_vars)
        e_i = energies(indicator, states[:, n_p:], i_vars)
        np.testing.assert_allclose(joint, e_p + program.scale_constant * e_i, rtol=0, atol=1e-12)

        best = states[np.argmin(joint)]
        p_best = _all_states(n_p)[np.argmin(energies(problem, _all_states(n_p), p_vars))]
        i_best = _all_states(n_i)[np.argmin(energies(indicator, _all_states(n_i), i_vars))]
        assert best.tolist() == [*p_best.tolist(), *i_best.tolist()]


@pytest.mark.parametrize("seed", range(10))
def test_frame_round_trip_restores_coefficients(seed: int):
    model = _random_model(np.random.default_rng(seed), list(range(6)))
    ising, _ = qubo_ising_convert(model, Frame.ISING)
    back, _ = qubo_ising_convert(ising, Frame.QUBO)
    assert back.frame is Frame.QUBO
    for v in model.variables:
        assert back.linear.get(v, 0.0) == pytest.approx(model.linear.get(v, 0.0), abs=1e-12)
    assert set(back.quadratic) == set(model.quadratic)
    for pair, bias in model.quadratic.items():
        assert back.quadratic[pair] == pytest.approx(bias, abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_scaling_keeps_the_minimizer(seed: int):
    rng = np.random.default_rng(seed)
    model = _random_model(rng, list(range(6)))
    order, states = range(6), _all_states(6)
    best = np.argmin(energies(model, states, order))

    scaled, factor = autoscale(model)
    assert factor > 0
    assert np.argmin(energies(scaled, states, order)) == best
    c = float(rng.uniform(0.01, 100.0))
    assert np.argmin(energies(model.scaled(c), states, order)) == best
