from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.exceptions import ParameterError


UNIT_NORM_TOLERANCE = 1e-6


def _frozen_array(value, dtype) -> np.ndarray:
    array = np.array(value, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array


class CloudFormat(str, Enum):
    """Supported point-cloud text formats"""

    XYZ = "xyz"
    PLY_ASCII = "ply_ascii"


class SampleMethod(str, Enum):
    FPS = "fps"
    FFPS = "ffps"
    SWS = "sws"


class CorruptionFamily(str, Enum):
    """The seven corruption families"""

    SCALE = "scale"
    JITTER = "jitter"
    DROP_GLOBAL = "drop_global"
    DROP_LOCAL = "drop_local"
    ADD_GLOBAL = "add_global"
    ADD_LOCAL = "add_local"
    ROTATE = "rotate"


class PointCloud(BaseModel):
    """Ordered 3D points with optional unit normals.

    Point ``i`` keeps index ``i`` for its whole life; every operation that adds
    points appends them, every operation that removes points preserves the
    relative order of the survivors.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray = Field(..., description="(N, 3) coordinates")
    normals: Optional[np.ndarray] = Field(None, description="(N, 3) unit normals")

    @field_validator("points", mode="before")
    @classmethod
    def _validate_points(cls, value) -> np.ndarray:
        points = np.asarray(value, dtype=np.float64)
        if points.size == 0:
            points = points.reshape(0, 3)
        if points.ndim != 2 or points.shape[1] != 3:
            raise ValueError(f"points must have shape (N, 3), got {points.shape}")
        if not np.all(np.isfinite(points)):
            raise ValueError("points contain non-finite coordinates")
        return _frozen_array(points, np.float64)

    @field_validator("normals", mode="before")
    @classmethod
    def _validate_normals(cls, value) -> Optional[np.ndarray]:
        if value is None:
            return None
        normals = np.asarray(value, dtype=np.float64)
        if normals.size == 0:
            normals = normals.reshape(0, 3)
        if normals.ndim != 2 or normals.shape[1] != 3:
            raise ValueError(f"normals must have shape (N, 3), got {normals.shape}")
        norms = np.linalg.norm(normals, axis=1)
        if not np.all(np.abs(norms - 1.0) <= UNIT_NORM_TOLERANCE):
            raise ValueError("normals must be unit vectors")
        return _frozen_array(normals, np.float64)

    @model_validator(mode="after")
    def _check_lengths(self) -> "PointCloud":
        if self.normals is not None and len(self.normals) != len(self.points):
            raise ValueError(
                f"{len(self.normals)} normals given for {len(self.points)} points"
            )
        return self

    @property
    def n_points(self) -> int:
        return int(self.points.shape[0])

    @property
    def has_normals(self) -> bool:
        return self.normals is not None

    def require_non_empty(self, minimum: int = 1) -> "PointCloud":
        if self.n_points < minimum:
            raise ParameterError(
                f"Operation needs at least {minimum} point(s), cloud has {self.n_points}"
            )
        return self

    def select(self, indices) -> "PointCloud":
        """Sub-cloud made of ``indices`` in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        normals = self.normals[indices] if self.normals is not None else None
        return PointCloud(points=self.points[indices], normals=normals)

    def append(
        self, points: np.ndarray, normals: Optional[np.ndarray] = None
    ) -> "PointCloud":
        """New cloud with ``points`` after the existing ones.

        Normals are kept only if both sides provide them.
        """
        points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        merged_normals = None
        if self.normals is not None and normals is not None:
            merged_normals = np.vstack([self.normals, normals])
        return PointCloud(
            points=np.vstack([self.points, points]), normals=merged_normals
        )

    def without_normals(self) -> "PointCloud":
        return PointCloud(points=self.points)


class NeighborGraph(BaseModel):
    """k-nearest-neighbor structure of one cloud (self excluded).

    Row ``i`` of ``neighbors`` / ``distances`` is sorted by ascending distance,
    ties broken by the lower point index.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: int = Field(..., ge=1)
    neighbors: np.ndarray = Field(..., description="(N, k) neighbor indices")
    distances: np.ndarray = Field(..., description="(N, k) neighbor distances")
    radii: np.ndarray = Field(..., description="(N,) distance to the k-th neighbor")
    median_radius: float = Field(..., ge=0.0)

    @model_validator(mode="after")
    def _freeze(self) -> "NeighborGraph":
        for array in (self.neighbors, self.distances, self.radii):
            array.flags.writeable = False
        return self

    @property
    def n_points(self) -> int:
        return int(self.neighbors.shape[0])


class WeightVector(BaseModel):
    """Per-point isolation rates and what is derived from them.

    ``isolation`` is high for isolated points; ``sampling_weight`` and ``mask``
    are filled in by later stages.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    isolation: np.ndarray
    sampling_weight: Optional[np.ndarray] = None
    mask: Optional[np.ndarray] = None
    omega: Optional[float] = Field(None, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def _check(self) -> "WeightVector":
        n = len(self.isolation)
        if np.any(self.isolation < 0.0) or np.any(self.isolation > 1.0):
            raise ValueError("isolation rates must lie in [0, 1]")
        if self.sampling_weight is not None:
            if len(self.sampling_weight) != n:
                raise ValueError("sampling_weight length differs from isolation")
            if np.any(self.sampling_weight < 0.0):
                raise ValueError("sampling weights must be non-negative")
            if abs(float(self.sampling_weight.sum()) - 1.0) > 1e-9:
                raise ValueError("sampling weights must sum to 1")
        if self.mask is not None:
            if len(self.mask) != n:
                raise ValueError("mask length differs from isolation")
            if not np.any(self.mask):
                raise ValueError("mask must keep at least one point")
        for array in (self.isolation, self.sampling_weight, self.mask):
            if array is not None:
                array.flags.writeable = False
        return self

    @property
    def n_points(self) -> int:
        return int(len(self.isolation))

    def replace(self, **kwargs) -> "WeightVector":
        """Returns a new, re-validated WeightVector with the given fields replaced."""
        return type(self)(**{**dict(self), **kwargs})


class SampleResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    indices: List[int]
    method: SampleMethod
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _check_distinct(self) -> "SampleResult":
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("key point indices must be distinct")
        return self


class ResamplePlan(BaseModel):
    """One up- or down-sampling action.

    For downsampling ``selected`` holds the removed indices; for upsampling it
    holds the positions of the accepted interpolants in the candidate list.
    """

    model_config = ConfigDict(frozen=True)

    delta_n: int
    neighborhood_size: Optional[int] = None
    center_index: Optional[int] = None
    selected: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_size(self) -> "ResamplePlan":
        if len(self.selected) != abs(self.delta_n):
            raise ValueError(
                f"plan selects {len(self.selected)} points for delta_n={self.delta_n}"
            )
        return self


class InterpolationRecord(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    source_index: int
    neighbor_index: int
    delta_med: float
    direction: np.ndarray
    new_point: np.ndarray


class CorruptionSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: CorruptionFamily
    severity: int = Field(..., ge=1, le=5)
    seed: int = Field(0, ge=0)

    def __str__(self) -> str:
        return f"{self.family.value} {self.severity} {self.seed}"
