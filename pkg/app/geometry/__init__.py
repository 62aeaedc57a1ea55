from app.geometry.knn import build_neighbor_graph, pairwise_distances, point_distances
from app.geometry.metrics import chamfer_distance, nearest_distances
from app.geometry.normals import NormalEstimate, estimate_normals, normal_estimation
from app.geometry.transforms import is_unit_sphere_normalized, normalize_unit_sphere


__all__ = [
    "build_neighbor_graph",
    "pairwise_distances",
    "point_distances",
    "chamfer_distance",
    "nearest_distances",
    "NormalEstimate",
    "estimate_normals",
    "normal_estimation",
    "is_unit_sphere_normalized",
    "normalize_unit_sphere",
]
