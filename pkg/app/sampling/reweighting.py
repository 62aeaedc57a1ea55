"""Isolation rates and the weights derived from them.

The isolation rate of a point is the fraction of its k-neighbor distances that
reach the median local radius of the whole cloud. Training samples points with
probability decreasing in isolation; inference masks out the most isolated
tail before FFPS.
"""

import math
from typing import Optional

import numpy as np
from scipy.special import softmax

from app.config import WeightTransform, config
from app.exceptions import ParameterError
from app.logger import logger
from app.schema import NeighborGraph, WeightVector


def isolation_rates(graph: NeighborGraph) -> WeightVector:
    """Fraction of each point's neighbor distances that are >= the median radius."""
    reaches = graph.distances >= graph.median_radius
    isolation = reaches.mean(axis=1)
    return WeightVector(isolation=isolation)


def sampling_weights(
    wv: WeightVector,
    transform: Optional[WeightTransform] = None,
    temperature: Optional[float] = None,
) -> WeightVector:
    """Normalized categorical weights, lower for more isolated points.

    With the default ``complement`` transform the weight is 1 - isolation; a
    cloud in which every point is fully isolated falls back to uniform weights.
    """
    transform = WeightTransform(transform or config.protocol.weight_transform)
    n = wv.n_points

    if transform == WeightTransform.SOFTMAX:
        temperature = temperature or config.protocol.softmax_temperature
        weights = softmax(-wv.isolation / temperature)
    else:
        raw = 1.0 - wv.isolation
        total = raw.sum()
        if total <= 0.0:
            logger.warning("Every point is fully isolated; using uniform weights")
            weights = np.full(n, 1.0 / n)
        else:
            weights = raw / total
    return wv.replace(sampling_weight=weights)


def _retained_count(isolation: np.ndarray, omega: float) -> int:
    threshold = np.quantile(isolation, omega)
    strict = int(np.count_nonzero(isolation <= threshold))
    # rounding guards against 0.1 * 30 == 3.0000000000000004
    return max(strict, math.ceil(round(omega * len(isolation), 9)))


def filter_mask(wv: WeightVector, omega: float) -> WeightVector:
    """Binary FFPS mask dropping the most isolated ``1 - omega`` tail.

    A point is dropped when its isolation strictly exceeds the omega-quantile
    (linear interpolation). The retained set is the least-isolated prefix in
    (isolation, index) order, extended to at least ceil(omega * N) points, so
    masks grow monotonically with omega and never empty.
    """
    if not 0.0 < omega <= 1.0:
        raise ParameterError(f"omega must lie in (0, 1], got {omega}")
    isolation = wv.isolation
    keep = _retained_count(isolation, omega)
    order = np.lexsort((np.arange(len(isolation)), isolation))
    mask = np.zeros(len(isolation), dtype=bool)
    mask[order[:keep]] = True
    logger.debug(
        f"Filter mask at omega={omega}: {len(isolation) - keep} of {len(isolation)} points dropped"
    )
    return wv.replace(mask=mask, omega=omega)
