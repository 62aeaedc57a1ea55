from typing import Optional, Tuple

import numpy as np

from app.config import DownsampleMode
from app.exceptions import ParameterError
from app.geometry.knn import point_distances
from app.logger import logger
from app.rng import STREAM_DOWNSAMPLE, derive_rng
from app.schema import PointCloud, ResamplePlan


def center_neighborhood(cloud: PointCloud, center: int, size: int) -> np.ndarray:
    """The ``size`` nearest points of ``center``, the center itself first."""
    distances = point_distances(cloud.points, cloud.points[center])
    distances[center] = -1.0
    order = np.lexsort((np.arange(cloud.n_points), distances))
    return order[:size]


def lgb_downsample(
    cloud: PointCloud,
    delta_n: int,
    seed: int,
    neighborhood_size: Optional[int] = None,
    mode: DownsampleMode = DownsampleMode.LGB,
) -> Tuple[PointCloud, ResamplePlan]:
    """Local-global-balanced removal of ``-delta_n`` points.

    A random center and a random neighborhood size k~ in [|delta_n|, N] are
    drawn; the removed points are a uniform subset of the center's k~-NN. At
    k~ = |delta_n| a contiguous patch disappears, at k~ = N the removal is
    global and uniform. ``mode`` pins k~ to one of those ends (``knn`` and
    ``random``) and ``neighborhood_size`` pins it to any value.
    """
    n = cloud.require_non_empty().n_points
    removal = -delta_n
    if not 1 <= removal <= n - 1:
        raise ParameterError(
            f"delta_n must lie in [{-(n - 1)}, -1] for {n} points, got {delta_n}"
        )

    rng = derive_rng(seed, STREAM_DOWNSAMPLE)
    center = int(rng.integers(n))
    drawn_size = int(rng.integers(removal, n + 1))
    if neighborhood_size is None:
        neighborhood_size = {
            DownsampleMode.LGB: drawn_size,
            DownsampleMode.KNN: removal,
            DownsampleMode.RANDOM: n,
        }[DownsampleMode(mode)]
    elif not removal <= neighborhood_size <= n:
        raise ParameterError(
            f"neighborhood_size must lie in [{removal}, {n}], got {neighborhood_size}"
        )

    neighborhood = center_neighborhood(cloud, center, neighborhood_size)
    removed = np.sort(rng.choice(neighborhood, size=removal, replace=False))
    keep = np.ones(n, dtype=bool)
    keep[removed] = False

    plan = ResamplePlan(
        delta_n=delta_n,
        neighborhood_size=neighborhood_size,
        center_index=center,
        selected=[int(i) for i in removed],
    )
    logger.debug(
        f"LGB downsample: center={center}, k~={neighborhood_size}, removed={removal}"
    )
    return cloud.select(np.flatnonzero(keep)), plan
