"""The seven corruption families.

Each family maps a unit-sphere-normalized cloud, a severity ``s`` in 1..5 and a
seeded generator to a corrupted cloud. Drop families remove points, add
families append outliers after the original points, the rest transform every
point in place.
"""

from typing import Callable, Dict, Optional

import numpy as np
from scipy.spatial.transform import Rotation

from app.config import CorruptionSchedule, config
from app.exceptions import ParameterError
from app.geometry.transforms import is_unit_sphere_normalized, normalize_unit_sphere
from app.logger import logger
from app.resampling.downsample import center_neighborhood
from app.schema import CorruptionFamily, CorruptionSpec, PointCloud


def _count(fraction: float, n: int) -> int:
    return int(round(fraction * n))


def corrupt_scale(cloud, s, rng, schedule):
    bound = np.log(1.0 + schedule.scale_step * s)
    factors = np.exp(rng.uniform(-bound, bound, size=3))
    return PointCloud(points=cloud.points * factors)


def corrupt_jitter(cloud, s, rng, schedule):
    sigma = schedule.jitter_sigma_step * s
    return PointCloud(points=cloud.points + rng.normal(0.0, sigma, cloud.points.shape))


def corrupt_drop_global(cloud, s, rng, schedule):
    n = cloud.n_points
    dropped = _count(schedule.drop_global_step * s, n)
    if dropped >= n:
        raise ParameterError(f"drop_global severity {s} would remove all {n} points")
    removed = rng.choice(n, size=dropped, replace=False)
    keep = np.ones(n, dtype=bool)
    keep[removed] = False
    return cloud.select(np.flatnonzero(keep))


def corrupt_drop_local(cloud, s, rng, schedule):
    n = cloud.n_points
    patch = max(1, _count(schedule.drop_local_patch_fraction, n))
    if patch * s >= n:
        raise ParameterError(
            f"drop_local severity {s} would remove {patch * s} of {n} points"
        )
    remaining = np.arange(n)
    for _ in range(s):
        current = cloud.select(remaining)
        center = int(rng.integers(current.n_points))
        patch_slots = center_neighborhood(current, center, patch)
        remaining = np.delete(remaining, patch_slots)
    return cloud.select(remaining)


def corrupt_add_global(cloud, s, rng, schedule):
    added = _count(schedule.add_step * s, cloud.n_points)
    half = schedule.add_global_half_width
    outliers = rng.uniform(-half, half, size=(added, 3))
    return cloud.without_normals().append(outliers)


def corrupt_add_local(cloud, s, rng, schedule):
    added = _count(schedule.add_step * s, cloud.n_points)
    centers = cloud.points[rng.choice(cloud.n_points, size=s, replace=cloud.n_points < s)]
    # blob sizes differ by at most one point
    sizes = np.full(s, added // s)
    sizes[: added % s] += 1
    blobs = [
        center + rng.normal(0.0, schedule.add_local_sigma, size=(size, 3))
        for center, size in zip(centers, sizes)
    ]
    return cloud.without_normals().append(np.vstack(blobs))


def corrupt_rotate(cloud, s, rng, schedule):
    angle = np.deg2rad(rng.uniform(0.0, schedule.rotate_step_degrees * s))
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    rotation = Rotation.from_rotvec(angle * axis)
    normals = rotation.apply(cloud.normals) if cloud.has_normals else None
    return PointCloud(points=rotation.apply(cloud.points), normals=normals)


CORRUPTIONS: Dict[CorruptionFamily, Callable] = {
    CorruptionFamily.SCALE: corrupt_scale,
    CorruptionFamily.JITTER: corrupt_jitter,
    CorruptionFamily.DROP_GLOBAL: corrupt_drop_global,
    CorruptionFamily.DROP_LOCAL: corrupt_drop_local,
    CorruptionFamily.ADD_GLOBAL: corrupt_add_global,
    CorruptionFamily.ADD_LOCAL: corrupt_add_local,
    CorruptionFamily.ROTATE: corrupt_rotate,
}


def corrupt(
    cloud: PointCloud,
    spec: CorruptionSpec,
    schedule: Optional[CorruptionSchedule] = None,
) -> PointCloud:
    """Apply one corruption; the input is unit-sphere normalized first if needed."""
    cloud.require_non_empty()
    schedule = schedule or config.corruption
    if not is_unit_sphere_normalized(cloud):
        cloud = normalize_unit_sphere(cloud)
    rng = np.random.default_rng(spec.seed)
    if spec.family in (CorruptionFamily.SCALE, CorruptionFamily.JITTER):
        cloud = cloud.without_normals()
    corrupted = CORRUPTIONS[spec.family](cloud, spec.severity, rng, schedule)
    logger.debug(f"Corrupted ({spec}): {cloud.n_points} -> {corrupted.n_points} points")
    return corrupted
