import numpy as np
import pytest

from app.geometry.knn import build_neighbor_graph
from app.geometry.normals import estimate_normals, normal_estimation
from app.schema import PointCloud


def test_plane_normals(plane_grid):
    cloud = plane_grid.without_normals()
    estimated = estimate_normals(cloud, build_neighbor_graph(cloud, 8))

    np.testing.assert_allclose(
        estimated.normals, np.tile([0.0, 0.0, 1.0], (100, 1)), atol=1e-9
    )


def test_collinear_neighborhood_is_flagged():
    """Tests the degenerate flag and the fallback normal on a line."""
    cloud = PointCloud(points=[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])
    estimate = normal_estimation(cloud, build_neighbor_graph(cloud, 2))

    assert estimate.degenerate.all()
    assert estimate.n_degenerate == 3
    np.testing.assert_allclose(np.linalg.norm(estimate.normals, axis=1), 1.0)
    np.testing.assert_allclose(estimate.normals[:, 0], 0.0, atol=1e-9)


def test_sphere_normals_follow_radius(make_sphere):
    cloud = make_sphere(2048)
    estimated = estimate_normals(cloud, build_neighbor_graph(cloud, 20))

    alignment = np.abs(np.sum(estimated.normals * cloud.points, axis=1))
    assert np.all(alignment >= np.cos(np.deg2rad(15.0)))


def test_sign_canonical(make_sphere):
    cloud = make_sphere(500)
    normals = estimate_normals(cloud, build_neighbor_graph(cloud, 20)).normals

    dominant = normals[np.arange(500), np.argmax(np.abs(normals), axis=1)]
    assert np.all(dominant > 0.0)


@pytest.mark.parametrize("scale", [0.01, 3.5, 250.0])
def test_scale_leaves_normals_unchanged(make_sphere, scale):
    cloud = make_sphere(400)
    scaled = PointCloud(points=cloud.points * scale)

    normals = estimate_normals(cloud, build_neighbor_graph(cloud, 16)).normals
    scaled_normals = estimate_normals(scaled, build_neighbor_graph(scaled, 16)).normals

    np.testing.assert_allclose(scaled_normals, normals, atol=1e-6)


def test_existing_normals_preserved(make_sphere):
    cloud = make_sphere(100, with_normals=True)
    estimated = estimate_normals(cloud, build_neighbor_graph(cloud, 10))

    assert estimated is cloud
