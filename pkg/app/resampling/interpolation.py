"""Local-geometry-preserved interpolation on tangent planes.

A new point is placed at the median neighbor distance from its source, along
the tangent-plane projection of the offset towards a random neighbor.
"""

from typing import List

import numpy as np

from app.exceptions import NoInterpolantError, ParameterError
from app.logger import logger
from app.rng import STREAM_INTERPOLATION, derive_rng
from app.schema import InterpolationRecord, NeighborGraph, PointCloud


MIN_DIRECTION_NORM = 1e-9


def tangent_projection(normal: np.ndarray, offset: np.ndarray) -> np.ndarray:
    """(I - n n^T) offset; unchanged when ``normal`` flips sign."""
    return offset - normal * np.dot(normal, offset)


def tangent_interpolant(
    point: np.ndarray, normal: np.ndarray, neighbor: np.ndarray, delta_med: float
):
    """Unit tangent direction towards ``neighbor`` and the point ``delta_med`` along it.

    Raises:
        NoInterpolantError: if the offset is parallel to the normal.
    """
    v = tangent_projection(normal, neighbor - point)
    norm = np.linalg.norm(v)
    if norm < MIN_DIRECTION_NORM:
        raise NoInterpolantError("Neighbor offset is parallel to the normal")
    direction = v / norm
    return direction, point + delta_med * direction


def lgp_interpolate(
    cloud: PointCloud,
    graph: NeighborGraph,
    query: int,
    seed: int,
    round_index: int = 0,
) -> InterpolationRecord:
    """One interpolant for source point ``query``.

    Neighbors are tried in a seeded random order, so a degenerate draw is
    redrawn until each of the k neighbors has been tried once.
    """
    if not cloud.has_normals:
        raise ParameterError("Interpolation needs normals; estimate them first")
    if not 0 <= query < cloud.n_points:
        raise ParameterError(f"query index {query} is outside [0, {cloud.n_points})")

    rng = derive_rng(seed, STREAM_INTERPOLATION, round_index, query)
    neighbors = graph.neighbors[query]
    delta_med = float(np.median(graph.distances[query]))
    point = cloud.points[query]
    normal = cloud.normals[query]

    for slot in rng.permutation(len(neighbors)):
        neighbor_index = int(neighbors[slot])
        try:
            direction, new_point = tangent_interpolant(
                point, normal, cloud.points[neighbor_index], delta_med
            )
        except NoInterpolantError:
            continue
        return InterpolationRecord(
            source_index=query,
            neighbor_index=neighbor_index,
            delta_med=delta_med,
            direction=direction,
            new_point=new_point,
        )
    raise NoInterpolantError(
        f"Every neighbor of point {query} lies along its normal"
    )


def interpolation_candidates(
    cloud: PointCloud, graph: NeighborGraph, seed: int, round_index: int = 0
) -> List[InterpolationRecord]:
    """One interpolant per source point; degenerate sources are skipped."""
    records = []
    skipped = 0
    for query in range(cloud.n_points):
        try:
            records.append(lgp_interpolate(cloud, graph, query, seed, round_index))
        except NoInterpolantError:
            skipped += 1
    if skipped:
        logger.warning(f"Skipped {skipped} source point(s) without a tangent direction")
    return records
