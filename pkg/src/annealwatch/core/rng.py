"""Seeded random streams.

Every random draw in annealwatch comes from a numpy `Generator` backed by PCG64 and seeded
through a `SeedSequence`. A stream is identified by the run seed plus a tuple key whose first
element is one of the tags below; the remaining elements locate the stream (a coefficient, a call
index, a read index). Identical seed and key always give the identical stream on every platform.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    """Tags that keep independent consumers of one seed from sharing streams."""

    INDICATOR = 1
    READS = 2
    NOISE = 3
    TIE_BREAK = 4
    DENSITY = 5
    SWEEPS = 6
    GRAPH = 7


def substream(seed: int, tag: Stream, *key: int) -> np.random.Generator:
    """Return the generator for `(seed, tag, *key)`.

    Raises:
        ValueError: If the seed or any key element is negative.
    """
    if seed < 0 or any(k < 0 for k in key):
        msg = f"Seeds and stream keys must be non-negative, got seed={seed}, key={key}."
        raise ValueError(msg)
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(int(tag), *map(int, key)))
    return np.random.Generator(np.random.PCG64(sequence))


def derive_seed(seed: int, tag: Stream, *key: int) -> int:
    """Derive a 63-bit integer seed from a substream, for APIs that take plain integers."""
    return int(substream(seed, tag, *key).integers(0, 2**63 - 1))
