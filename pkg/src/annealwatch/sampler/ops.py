from __future__ import annotations

import numpy as np

from annealwatch.core import Stream, substream
from annealwatch.qubo import QuboModel, Sample, energies
from annealwatch.sampler.kernel import CompiledModel, anneal_read, beta_schedule
from annealwatch.sampler.noise import NoiseProcessState, advance_noise
from annealwatch.sampler.types import AnnealCallConfig, SampleBatch


def metropolis_sample(
    model: QuboModel,
    beta: float,
    sweeps: int,
    rng: np.random.Generator,
    beta_start_fraction: float = 0.01,
) -> Sample:
    """Run `sweeps` single-flip Metropolis passes from a uniform random start.

    Passes visit variables in ascending id order. The inverse temperature of the passes ramps
    geometrically from `beta_start_fraction * beta` to `beta`; a fraction of 1 keeps it fixed.
    At beta 0 every proposed flip is accepted, so the result stays uniformly distributed.

    Raises:
        ValueError: If beta is negative or sweeps < 1.
    """
    compiled = CompiledModel.from_model(model)
    state = anneal_read(compiled, beta_schedule(beta, sweeps, beta_start_fraction), rng)
    return Sample(dict(zip(compiled.variables, map(int, state), strict=True)))


def run_call(
    program: QuboModel | CompiledModel,
    cfg: AnnealCallConfig,
    noise: NoiseProcessState,
    call_index: int = 0,
) -> tuple[SampleBatch, NoiseProcessState]:
    """Draw one batch of reads at the noise process's current beta, then advance the noise.

    With `reduce_intersample_correlation`, read r uses the stream (seed, call_index, r) and its
    own random start. Without it, all reads share the stream (seed, call_index) and each read
    starts from the previous read's final state.

    Returns:
        The batch and the noise state for the next call.
    """
    compiled = program if isinstance(program, CompiledModel) else CompiledModel.from_model(program)
    sweeps = cfg.sweeps
    if cfg.random_sweeps is not None:
        low, high = cfg.random_sweeps
        sweeps = int(substream(cfg.seed, Stream.SWEEPS, call_index).integers(low, high + 1))

    beta = noise.current_beta
    betas = beta_schedule(beta, sweeps, cfg.beta_start_fraction)
    states = np.empty((cfg.num_reads, compiled.num_variables), dtype=np.int8)

    if cfg.reduce_intersample_correlation:
        for r in range(cfg.num_reads):
            rng = substream(cfg.seed, Stream.READS, call_index, r)
            states[r] = anneal_read(compiled, betas, rng)
    else:
        rng = substream(cfg.seed, Stream.READS, call_index)
        previous = None
        for r in range(cfg.num_reads):
            previous = anneal_read(compiled, betas, rng, start=previous)
            states[r] = previous

    batch = SampleBatch(
        states=states,
        variables=compiled.variables,
        energies=energies(compiled.model, states, compiled.variables),
        call_index=call_index,
        beta_used=beta,
        sweeps_used=sweeps,
    )
    return batch, advance_noise(noise)
