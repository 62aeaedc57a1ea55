import numpy as np
from scipy.spatial import cKDTree

from app.schema import PointCloud


def nearest_distances(source: PointCloud, target: PointCloud) -> np.ndarray:
    """Distance from every point of ``source`` to its nearest point in ``target``."""
    distances, _ = cKDTree(target.points).query(source.points, k=1)
    return distances


def chamfer_distance(a: PointCloud, b: PointCloud) -> float:
    """Symmetric Chamfer distance, sum-of-means convention."""
    a.require_non_empty()
    b.require_non_empty()
    forward = nearest_distances(a, b).mean()
    backward = nearest_distances(b, a).mean()
    return float(forward + backward)
