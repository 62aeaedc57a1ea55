"""Exact k-nearest-neighbor graphs.

Two search paths exist: a full distance matrix for small clouds and a kd-tree
for large ones. Both compute every reported distance with
:func:`point_distances` and order candidates by (distance, index), so they
return identical graphs.
"""

from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from app.config import config
from app.exceptions import ParameterError
from app.logger import logger
from app.schema import NeighborGraph, PointCloud


def point_distances(points: np.ndarray, origin: np.ndarray) -> np.ndarray:
    """Euclidean distances from ``origin`` (3,) to each row of ``points``."""
    diff = points - origin
    return np.sqrt(diff[..., 0] ** 2 + diff[..., 1] ** 2 + diff[..., 2] ** 2)


def pairwise_distances(points: np.ndarray) -> np.ndarray:
    """Full (N, N) distance matrix, rounding exactly like point_distances."""
    return point_distances(points[:, None, :], points[None, :, :])


def _brute_force_neighbors(points: np.ndarray, k: int):
    distances = pairwise_distances(points)
    np.fill_diagonal(distances, np.inf)
    # stable sort keeps the lower index first among equal distances
    order = np.argsort(distances, axis=1, kind="stable")[:, :k]
    return order, np.take_along_axis(distances, order, axis=1)


def _kdtree_neighbors(points: np.ndarray, k: int, workers: int):
    tree = cKDTree(points)
    # the (k+1)-th distance including the query itself bounds the true k-NN set
    bound, _ = tree.query(points, k=k + 1, workers=workers)
    radius = bound[:, k] * (1.0 + 1e-9) + 1e-12
    candidates = tree.query_ball_point(points, r=radius, workers=workers)

    n = len(points)
    neighbors = np.empty((n, k), dtype=np.int64)
    distances = np.empty((n, k), dtype=np.float64)
    for i, found in enumerate(candidates):
        found = np.asarray(found, dtype=np.int64)
        found = found[found != i]
        d = point_distances(points[found], points[i])
        order = np.lexsort((found, d))[:k]
        neighbors[i] = found[order]
        distances[i] = d[order]
    return neighbors, distances


def build_neighbor_graph(
    cloud: PointCloud, k: int, brute_force_max_points: Optional[int] = None
) -> NeighborGraph:
    """k-NN graph of ``cloud`` with per-point radius and the median radius.

    Raises:
        ParameterError: if ``k`` is outside [1, N-1].
    """
    n = cloud.n_points
    if n < 2:
        raise ParameterError(f"A neighbor graph needs at least 2 points, got {n}")
    if k < 1 or k >= n:
        raise ParameterError(f"k must lie in [1, {n - 1}] for {n} points, got {k}")

    if brute_force_max_points is None:
        brute_force_max_points = config.knn.brute_force_max_points

    points = cloud.points
    if n <= brute_force_max_points:
        neighbors, distances = _brute_force_neighbors(points, k)
        backend = "matrix"
    else:
        neighbors, distances = _kdtree_neighbors(points, k, config.knn.workers)
        backend = "kd-tree"

    radii = distances[:, -1].copy()
    median_radius = float(np.median(radii))
    logger.debug(
        f"Built {backend} neighbor graph: N={n}, k={k}, median radius={median_radius:.6g}"
    )
    return NeighborGraph(
        k=k,
        neighbors=neighbors,
        distances=distances,
        radii=radii,
        median_radius=median_radius,
    )
