"""Seeded random streams.

Every random decision in the package draws from a ``numpy.random.Generator``
derived from the caller's seed plus a tuple of integer keys. Streams with
different keys are statistically independent, and a given (seed, keys) pair
always yields the same stream, so per-point work can run in any order.
"""

import numpy as np

from app.exceptions import ParameterError


# stream tags, one per consumer
STREAM_INTERPOLATION = 1
STREAM_UPSAMPLE_SELECT = 2
STREAM_DOWNSAMPLE = 3
STREAM_SIZE_DELTA = 4
STREAM_START_POINT = 5
STREAM_FILE = 6
STREAM_SWS = 7


def _seed_sequence(seed: int, keys) -> np.random.SeedSequence:
    if seed is None or seed < 0:
        raise ParameterError(f"seed must be a non-negative integer, got {seed}")
    return np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """Generator for the stream identified by ``seed`` and ``keys``."""
    return np.random.default_rng(_seed_sequence(seed, keys))


def derive_seed(seed: int, *keys: int) -> int:
    """Integer seed for a sub-stream, e.g. one input file of a batch."""
    return int(_seed_sequence(seed, keys).generate_state(1, dtype=np.uint32)[0])

