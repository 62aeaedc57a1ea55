from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.config import config
from app.exceptions import ParameterError
from app.logger import logger
from app.schema import NeighborGraph, PointCloud


class NormalEstimate(BaseModel):
    """PCA normals plus a flag for every point whose neighborhood is collinear."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    normals: np.ndarray
    degenerate: np.ndarray

    @property
    def n_degenerate(self) -> int:
        return int(self.degenerate.sum())


def _orthogonal_unit(direction: np.ndarray) -> np.ndarray:
    # cross with the axis least aligned with the direction
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(direction)))] = 1.0
    ortho = np.cross(direction, axis)
    return ortho / np.linalg.norm(ortho)


def _canonicalize_sign(normals: np.ndarray) -> np.ndarray:
    dominant = np.argmax(np.abs(normals), axis=1)
    signs = np.sign(normals[np.arange(len(normals)), dominant])
    signs[signs == 0] = 1.0
    return normals * signs[:, None]


def normal_estimation(
    cloud: PointCloud, graph: NeighborGraph, tolerance: Optional[float] = None
) -> NormalEstimate:
    """Smallest-eigenvalue eigenvector of each neighborhood covariance.

    The neighborhood of point ``i`` is its graph neighbors plus ``i`` itself.
    Signs are canonicalized so the largest-magnitude component is positive.
    """
    if graph.n_points != cloud.n_points:
        raise ParameterError(
            f"Graph has {graph.n_points} points but the cloud has {cloud.n_points}"
        )
    if tolerance is None:
        tolerance = config.normals.degenerate_tolerance

    points = cloud.points
    patches = np.concatenate(
        [points[:, None, :], points[graph.neighbors]], axis=1
    )  # (N, k+1, 3)
    centered = patches - patches.mean(axis=1, keepdims=True)
    covariance = np.einsum("nki,nkj->nij", centered, centered) / patches.shape[1]
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)

    normals = eigenvectors[:, :, 0].copy()
    largest = np.maximum(eigenvalues[:, 2], np.finfo(float).tiny)
    degenerate = eigenvalues[:, 1] <= tolerance * largest
    for i in np.flatnonzero(degenerate):
        normals[i] = _orthogonal_unit(eigenvectors[i, :, 2])

    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    return NormalEstimate(normals=_canonicalize_sign(normals), degenerate=degenerate)


def estimate_normals(cloud: PointCloud, graph: NeighborGraph) -> PointCloud:
    """Cloud with normals populated; clouds that already carry normals are returned as is."""
    if cloud.has_normals:
        return cloud
    estimate = normal_estimation(cloud, graph)
    if estimate.n_degenerate:
        logger.warning(
            f"{estimate.n_degenerate} point(s) have collinear neighborhoods; "
            "their normals are arbitrary vectors orthogonal to the line"
        )
    return PointCloud(points=cloud.points, normals=estimate.normals)
