import numpy as np
import pytest

from app.exceptions import ParameterError
from app.geometry.metrics import chamfer_distance
from app.geometry.transforms import is_unit_sphere_normalized, normalize_unit_sphere
from app.schema import PointCloud


def test_chamfer_identical(square):
    assert chamfer_distance(square, square) == 0.0


def test_chamfer_single_points():
    a = PointCloud(points=[[0.0, 0.0, 0.0]])
    b = PointCloud(points=[[1.0, 0.0, 0.0]])

    assert chamfer_distance(a, b) == pytest.approx(2.0)


def test_chamfer_translated_square(square):
    shifted = PointCloud(points=square.points + [0.1, 0.0, 0.0])

    assert chamfer_distance(square, shifted) == pytest.approx(0.2)


def test_chamfer_symmetric(make_sphere):
    a = make_sphere(300)
    b = PointCloud(points=np.random.default_rng(0).normal(size=(120, 3)))

    assert chamfer_distance(a, b) == pytest.approx(chamfer_distance(b, a), abs=1e-12)


def test_chamfer_rejects_empty(square):
    empty = PointCloud(points=np.empty((0, 3)))

    with pytest.raises(ParameterError):
        chamfer_distance(square, empty)


def test_normalize_unit_sphere():
    cloud = PointCloud(points=np.random.default_rng(1).uniform(-3.0, 5.0, size=(64, 3)))
    normalized = normalize_unit_sphere(cloud)

    np.testing.assert_allclose(normalized.points.mean(axis=0), 0.0, atol=1e-12)
    assert np.linalg.norm(normalized.points, axis=1).max() == pytest.approx(1.0)
    assert is_unit_sphere_normalized(normalized)
    assert not is_unit_sphere_normalized(cloud)


def test_normalize_single_point_only_centers():
    normalized = normalize_unit_sphere(PointCloud(points=[[2.0, -1.0, 4.0]]))

    np.testing.assert_array_equal(normalized.points, [[0.0, 0.0, 0.0]])
