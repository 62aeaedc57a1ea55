import numpy as np
import pytest

from app.schema import PointCloud


def fibonacci_points(n: int) -> np.ndarray:
    """``n`` nearly uniform points on the unit sphere."""
    i = np.arange(n) + 0.5
    phi = np.arccos(1.0 - 2.0 * i / n)
    theta = np.pi * (1.0 + 5.0**0.5) * i
    return np.stack(
        [np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)], axis=1
    )


def cube_outliers(count: int, seed: int, half_width: float = 2.0) -> np.ndarray:
    """Uniform points in the cube, kept at least 0.05 away from the unit sphere."""
    rng = np.random.default_rng(seed)
    outliers = []
    while len(outliers) < count:
        candidate = rng.uniform(-half_width, half_width, size=3)
        if abs(np.linalg.norm(candidate) - 1.0) >= 0.05:
            outliers.append(candidate)
    return np.array(outliers)


@pytest.fixture
def make_sphere():
    """Factory: fibonacci sphere cloud, optionally with its exact normals."""

    def _make(n: int, with_normals: bool = False) -> PointCloud:
        points = fibonacci_points(n)
        return PointCloud(points=points, normals=points if with_normals else None)

    return _make


@pytest.fixture
def make_sphere_with_outliers():
    """Factory: sphere surface followed by ``n_outliers`` cube outliers.

    Returns the cloud and the indices of the outliers.
    """

    def _make(n: int = 1024, n_outliers: int = 50, seed: int = 0):
        points = np.vstack([fibonacci_points(n), cube_outliers(n_outliers, seed)])
        return PointCloud(points=points), np.arange(n, n + n_outliers)

    return _make


@pytest.fixture
def square() -> PointCloud:
    """Unit square corners in the z=0 plane."""
    return PointCloud(
        points=[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]]
    )


@pytest.fixture
def collinear() -> PointCloud:
    """Points at x = 0, 1, 2, 3, 10; the last one is isolated."""
    return PointCloud(points=[[x, 0.0, 0.0] for x in (0.0, 1.0, 2.0, 3.0, 10.0)])


@pytest.fixture
def plane_grid() -> PointCloud:
    """10 x 10 lattice in the z=0 plane with exact normals."""
    xs, ys = np.meshgrid(np.arange(10.0), np.arange(10.0))
    points = np.stack([xs.ravel(), ys.ravel(), np.zeros(100)], axis=1)
    normals = np.tile([0.0, 0.0, 1.0], (100, 1))
    return PointCloud(points=points, normals=normals)
