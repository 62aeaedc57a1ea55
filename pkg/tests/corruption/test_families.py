import numpy as np
import pytest

from app.config import CorruptionSchedule
from app.corruption import CORRUPTIONS, corrupt
from app.exceptions import ParameterError
from app.geometry.knn import build_neighbor_graph, pairwise_distances
from app.geometry.transforms import normalize_unit_sphere
from app.sampling.reweighting import isolation_rates
from app.schema import CorruptionFamily, CorruptionSpec, PointCloud


def spec(family: str, severity: int, seed: int = 0) -> CorruptionSpec:
    return CorruptionSpec(family=family, severity=severity, seed=seed)


def row_set(points: np.ndarray) -> set:
    return {tuple(row) for row in points}


@pytest.fixture
def clean(make_sphere) -> PointCloud:
    return normalize_unit_sphere(make_sphere(1000))


def test_every_family_registered():
    assert set(CORRUPTIONS) == set(CorruptionFamily)


def test_severity_range():
    with pytest.raises(ValueError):
        spec("jitter", 0)
    with pytest.raises(ValueError):
        spec("jitter", 6)


def test_jitter_single_point_reproducible():
    cloud = PointCloud(points=[[0.0, 0.0, 0.0]])
    jittered = corrupt(cloud, spec("jitter", 1, seed=42))

    expected = np.random.default_rng(42).normal(0.0, 0.01, size=(1, 3))
    np.testing.assert_array_equal(jittered.points, expected)


def test_scale_factors_within_bounds(clean):
    scaled = corrupt(clean, spec("scale", 3, seed=1))

    factors = scaled.points[0] / clean.points[0]
    np.testing.assert_allclose(scaled.points, clean.points * factors, rtol=1e-12, atol=1e-15)
    assert np.all(factors >= 1 / 1.3 - 1e-12) and np.all(factors <= 1.3 + 1e-12)
    assert scaled.n_points == clean.n_points


def test_drop_global(clean):
    dropped = corrupt(clean, spec("drop_global", 2, seed=3))

    assert dropped.n_points == 700
    assert row_set(dropped.points) <= row_set(clean.points)


def test_drop_local_patches(clean):
    dropped = corrupt(clean, spec("drop_local", 4, seed=3))

    assert dropped.n_points == 1000 - 4 * 50
    assert row_set(dropped.points) <= row_set(clean.points)


def test_drop_rejects_emptying(square):
    with pytest.raises(ParameterError):
        corrupt(PointCloud(points=[[0.0, 0.0, 0.0]]), spec("drop_global", 5))
    with pytest.raises(ParameterError):
        corrupt(square, spec("drop_local", 4))


def test_drop_local_custom_schedule(make_sphere):
    cloud = normalize_unit_sphere(make_sphere(512))
    schedule = CorruptionSchedule(drop_local_patch_fraction=0.1)

    dropped = corrupt(cloud, spec("drop_local", 3), schedule)
    assert dropped.n_points == 512 - 3 * 51


@pytest.mark.parametrize("family", ["add_global", "add_local"])
@pytest.mark.parametrize("severity", [1, 3, 5])
def test_add_families_append(clean, family, severity):
    corrupted = corrupt(clean, spec(family, severity, seed=severity))

    assert corrupted.n_points == 1000 + 100 * severity
    np.testing.assert_array_equal(corrupted.points[:1000], clean.points)


def test_add_global_points_are_isolated(clean):
    corrupted = corrupt(clean, spec("add_global", 1, seed=0))
    isolation = isolation_rates(build_neighbor_graph(corrupted, 20)).isolation

    original_median = np.median(isolation[:1000])
    appended = isolation[1000:]
    assert np.median(appended) > original_median
    assert np.mean(appended > original_median) >= 0.7


def test_add_global_inside_cube(clean):
    corrupted = corrupt(clean, spec("add_global", 5, seed=8))

    assert np.all(np.abs(corrupted.points[1000:]) <= 1.0)


def test_rotate_preserves_distances(make_sphere):
    cloud = normalize_unit_sphere(make_sphere(200, with_normals=True))
    rotated = corrupt(cloud, spec("rotate", 5, seed=6))

    np.testing.assert_allclose(
        pairwise_distances(rotated.points), pairwise_distances(cloud.points), atol=1e-6
    )
    np.testing.assert_allclose(np.linalg.norm(rotated.normals, axis=1), 1.0)
    assert not np.allclose(rotated.points, cloud.points)


def test_rotate_angle_bound(clean):
    rotated = corrupt(clean, spec("rotate", 1, seed=2))

    norms = np.linalg.norm(clean.points, axis=1)
    cosines = np.sum(rotated.points * clean.points, axis=1) / norms**2
    # no point moves by more than the 15 degree bound
    assert np.all(cosines >= np.cos(np.deg2rad(15.0)) - 1e-9)


def test_normalizes_input(square):
    scaled = PointCloud(points=square.points * 40.0 + 7.0)
    rotated = corrupt(scaled, spec("rotate", 1))

    assert np.linalg.norm(rotated.points, axis=1).max() == pytest.approx(1.0)


@pytest.mark.parametrize("family", list(CorruptionFamily))
def test_deterministic_per_seed(clean, family):
    first = corrupt(clean, spec(family, 2, seed=13))
    second = corrupt(clean, spec(family, 2, seed=13))

    np.testing.assert_array_equal(first.points, second.points)


@pytest.mark.parametrize(
    "family, keeps_normals",
    [("scale", False), ("jitter", False), ("drop_global", True), ("add_local", False), ("rotate", True)],
)
def test_normals_policy(make_sphere, family, keeps_normals):
    cloud = normalize_unit_sphere(make_sphere(300, with_normals=True))

    assert corrupt(cloud, spec(family, 1)).has_normals == keeps_normals
