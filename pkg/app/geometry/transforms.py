import numpy as np

from app.schema import PointCloud


def is_unit_sphere_normalized(cloud: PointCloud, atol: float = 1e-6) -> bool:
    centroid = cloud.points.mean(axis=0)
    if np.linalg.norm(centroid) > atol:
        return False
    max_norm = np.linalg.norm(cloud.points, axis=1).max()
    return bool(max_norm == 0.0 or abs(max_norm - 1.0) <= atol)


def normalize_unit_sphere(cloud: PointCloud) -> PointCloud:
    """Center the cloud on its centroid and scale its farthest point to norm 1.

    A cloud whose points all coincide is only centered.
    """
    cloud.require_non_empty()
    centered = cloud.points - cloud.points.mean(axis=0)
    max_norm = np.linalg.norm(centered, axis=1).max()
    if max_norm > 0.0:
        centered = centered / max_norm
    return PointCloud(points=centered, normals=cloud.normals)
