"""Full-points resampling.

Training randomly grows or shrinks a cloud by delta_n points; inference only
grows clouds that are smaller than the canonical size.
"""

import math
from typing import List, Optional, Tuple

import numpy as np

from app.config import DownsampleMode, config
from app.exceptions import DegenerateGeometryError, NoInterpolantError, ParameterError
from app.geometry.knn import build_neighbor_graph
from app.geometry.normals import estimate_normals
from app.logger import logger
from app.resampling.downsample import lgb_downsample
from app.resampling.interpolation import interpolation_candidates
from app.rng import STREAM_SIZE_DELTA, STREAM_UPSAMPLE_SELECT, derive_rng
from app.schema import InterpolationRecord, NeighborGraph, PointCloud, ResamplePlan


def plan_upsample(
    cloud: PointCloud, delta_n: int, graph: NeighborGraph, seed: int
) -> Tuple[List[InterpolationRecord], ResamplePlan]:
    """Candidate interpolants and the ``delta_n`` of them to accept.

    Each round proposes one interpolant per source point. Whole rounds are
    taken while ``delta_n`` exceeds a round; the remainder is a uniform subset
    of the next round. ``plan.selected`` indexes into the returned list.
    """
    if delta_n < 1:
        raise ParameterError(f"delta_n must be positive for upsampling, got {delta_n}")
    if graph.n_points != cloud.n_points:
        raise ParameterError(
            f"Graph has {graph.n_points} points but the cloud has {cloud.n_points}"
        )
    cloud = estimate_normals(cloud, graph)

    candidates = []
    selected = []
    remaining = delta_n
    round_index = 0
    while remaining > 0:
        batch = interpolation_candidates(cloud, graph, seed, round_index)
        if not batch:
            raise DegenerateGeometryError(
                "No source point admits a tangent-plane interpolant"
            )
        offset = len(candidates)
        if remaining >= len(batch):
            picks = np.arange(len(batch))
        else:
            rng = derive_rng(seed, STREAM_UPSAMPLE_SELECT, round_index)
            picks = np.sort(rng.choice(len(batch), size=remaining, replace=False))
        candidates.extend(batch)
        selected.extend(int(offset + p) for p in picks)
        remaining -= len(picks)
        round_index += 1

    return candidates, ResamplePlan(delta_n=delta_n, selected=selected)


def upsample(
    cloud: PointCloud, delta_n: int, graph: NeighborGraph, seed: int
) -> PointCloud:
    """Append ``delta_n`` interpolated points; the input stays a prefix."""
    candidates, plan = plan_upsample(cloud, delta_n, graph, seed)
    accepted = [candidates[i] for i in plan.selected]
    new_points = np.array([record.new_point for record in accepted])
    new_normals = None
    if cloud.has_normals:
        # an interpolant lies on its source's tangent plane
        new_normals = cloud.normals[[record.source_index for record in accepted]]
    logger.debug(f"Upsampled {cloud.n_points} -> {cloud.n_points + delta_n} points")
    return cloud.append(new_points, new_normals)


def _graph_k(n: int, k: Optional[int]) -> int:
    return min(k or config.protocol.k, n - 1)


def draw_size_delta(n: int, rho: float, seed: int) -> int:
    """delta_n uniform on the integers of [-floor(rho*n), floor(rho*n)]."""
    if not 0.0 <= rho < 1.0:
        raise ParameterError(f"rho must lie in [0, 1), got {rho}")
    bound = math.floor(round(rho * n, 9))
    return int(derive_rng(seed, STREAM_SIZE_DELTA).integers(-bound, bound + 1))


def train_resample(
    cloud: PointCloud,
    rho: float,
    seed: int,
    k: Optional[int] = None,
    downsample_mode: DownsampleMode = DownsampleMode.LGB,
) -> PointCloud:
    """Randomly resize the cloud to N + delta_n for training-time augmentation."""
    n = cloud.require_non_empty(minimum=2).n_points
    delta_n = draw_size_delta(n, rho, seed)
    logger.debug(f"Training resample: N={n}, delta_n={delta_n}")
    if delta_n > 0:
        graph = build_neighbor_graph(cloud, _graph_k(n, k))
        return upsample(cloud, delta_n, graph, seed)
    if delta_n < 0:
        resampled, _ = lgb_downsample(cloud, delta_n, seed, mode=downsample_mode)
        return resampled
    return cloud


def inference_resample(
    cloud: PointCloud, target_n: int, seed: int, k: Optional[int] = None
) -> PointCloud:
    """Upsample clouds smaller than ``target_n``; larger clouds pass unchanged."""
    if target_n < 1:
        raise ParameterError(f"target_n must be positive, got {target_n}")
    n = cloud.require_non_empty().n_points
    if n >= target_n:
        return cloud
    if n == 1:
        raise NoInterpolantError("A single point has no neighbor to interpolate towards")
    graph = build_neighbor_graph(cloud, _graph_k(n, k))
    return upsample(cloud, target_n - n, graph, seed)
