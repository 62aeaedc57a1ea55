from typing import Optional

import numpy as np

from app.config import StartRule, config
from app.exceptions import InsufficientPointsError, ParameterError
from app.geometry.knn import point_distances
from app.logger import logger
from app.rng import STREAM_START_POINT, STREAM_SWS, derive_rng
from app.schema import PointCloud, SampleMethod, SampleResult, WeightVector


def _farthest_point_order(
    points: np.ndarray, m: int, start: int, candidates: np.ndarray
) -> list:
    """Incremental max-min selection over the boolean ``candidates`` mask.

    Keeps one running min-distance array, so the cost is O(m * N). Ties go to
    the lowest index (argmax returns the first maximum).
    """
    min_distance = point_distances(points, points[start])
    available = candidates.copy()
    available[start] = False
    selected = [start]
    for _ in range(m - 1):
        score = np.where(available, min_distance, -np.inf)
        chosen = int(np.argmax(score))
        selected.append(chosen)
        available[chosen] = False
        np.minimum(min_distance, point_distances(points, points[chosen]), out=min_distance)
    return selected


def fps(cloud: PointCloud, m: int, start: int) -> SampleResult:
    """Farthest point sampling of ``m`` key points beginning at ``start``."""
    n = cloud.require_non_empty().n_points
    if not 1 <= m <= n:
        raise ParameterError(f"m must lie in [1, {n}], got {m}")
    if not 0 <= start < n:
        raise ParameterError(f"start index {start} is outside [0, {n})")
    indices = _farthest_point_order(
        cloud.points, m, start, np.ones(n, dtype=bool)
    )
    return SampleResult(indices=indices, method=SampleMethod.FPS)


def resolve_start(
    cloud: PointCloud,
    mask: Optional[np.ndarray] = None,
    start_rule: StartRule = StartRule.MAX_CENTROID_DISTANCE,
    seed: Optional[int] = None,
) -> int:
    """Index of the first key point among the unmasked points."""
    if mask is None:
        mask = np.ones(cloud.n_points, dtype=bool)
    unmasked = np.flatnonzero(mask)
    if len(unmasked) == 0:
        raise InsufficientPointsError("No unmasked point to start from", available=0)

    start_rule = StartRule(start_rule)
    if start_rule == StartRule.FIRST_UNMASKED:
        return int(unmasked[0])
    if start_rule == StartRule.RANDOM:
        if seed is None:
            raise ParameterError("The random start rule needs a seed")
        return int(derive_rng(seed, STREAM_START_POINT).choice(unmasked))

    kept = cloud.points[unmasked]
    distances = point_distances(kept, kept.mean(axis=0))
    return int(unmasked[int(np.argmax(distances))])


def ffps(
    cloud: PointCloud,
    wv: WeightVector,
    m: int,
    start_rule: Optional[StartRule] = None,
    start: Optional[int] = None,
    seed: Optional[int] = None,
) -> SampleResult:
    """Filtered FPS: farthest point sampling restricted to mask-1 points.

    Masked points are never chosen, so the result is exactly FPS on the
    unmasked sub-cloud mapped back to original indices.

    Raises:
        InsufficientPointsError: if ``m`` exceeds the number of unmasked points.
    """
    if wv.mask is None:
        raise ParameterError("FFPS needs a filter mask; call filter_mask first")
    n = cloud.require_non_empty().n_points
    if wv.n_points != n:
        raise ParameterError(f"Weights cover {wv.n_points} points, cloud has {n}")
    available = int(wv.mask.sum())
    if m < 1:
        raise ParameterError(f"m must be positive, got {m}")
    if m > available:
        raise InsufficientPointsError(
            f"FFPS asked for {m} key points but only {available} points are unmasked",
            available=available,
        )

    if start is None:
        start = resolve_start(
            cloud, wv.mask, start_rule or config.protocol.start_rule, seed
        )
    elif not 0 <= start < n:
        raise ParameterError(f"start index {start} is outside [0, {n})")
    elif not wv.mask[start]:
        raise ParameterError(f"start index {start} is masked out")

    indices = _farthest_point_order(cloud.points, m, start, wv.mask)
    logger.debug(f"FFPS selected {m} of {available} unmasked points")
    return SampleResult(indices=indices, method=SampleMethod.FFPS, seed=seed)


def sws(cloud: PointCloud, wv: WeightVector, m: int, seed: int) -> SampleResult:
    """Stochastic weighted sampling of ``m`` distinct key points.

    Sequential categorical draws over ``sampling_weight`` with the remaining
    support renormalized after each draw.

    Raises:
        InsufficientPointsError: if ``m`` exceeds the count of positive weights.
    """
    if wv.sampling_weight is None:
        raise ParameterError("SWS needs sampling weights; call sampling_weights first")
    n = cloud.require_non_empty().n_points
    if wv.n_points != n:
        raise ParameterError(f"Weights cover {wv.n_points} points, cloud has {n}")
    support = int(np.count_nonzero(wv.sampling_weight > 0.0))
    if m < 1:
        raise ParameterError(f"m must be positive, got {m}")
    if m > support:
        raise InsufficientPointsError(
            f"SWS asked for {m} key points but only {support} have positive weight",
            available=support,
        )

    indices = derive_rng(seed, STREAM_SWS).choice(
        n, size=m, replace=False, p=wv.sampling_weight
    )
    return SampleResult(
        indices=[int(i) for i in indices], method=SampleMethod.SWS, seed=seed
    )
