from abc import ABC, abstractmethod
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.config import ProtocolConfig, config
from app.exceptions import ParameterError
from app.geometry.knn import build_neighbor_graph
from app.logger import logger
from app.schema import NeighborGraph, PointCloud, SampleResult, WeightVector


class PipelineMode(str, Enum):
    TRAINING = "train"
    INFERENCE = "inference"


class PipelineResult(BaseModel):
    """Prepared cloud, its key points and, when computed, its weights"""

    model_config = ConfigDict(frozen=True)

    mode: PipelineMode
    cloud: PointCloud
    keypoints: SampleResult
    weights: Optional[WeightVector] = None


def _default_protocol() -> ProtocolConfig:
    return config.protocol.model_copy()


class BasePipeline(BaseModel, ABC):
    """Base class for the end-to-end sampling protocols.

    Stages run left to right: resampling first, then reweighting, then key
    point sampling.
    """

    protocol: ProtocolConfig = Field(default_factory=_default_protocol)

    class Config:
        arbitrary_types_allowed = True

    @property
    @abstractmethod
    def mode(self) -> PipelineMode:
        """Which protocol this pipeline implements"""

    def neighbor_graph(self, cloud: PointCloud) -> NeighborGraph:
        n = cloud.require_non_empty(minimum=2).n_points
        k = self.protocol.k
        if k >= n:
            logger.warning(f"k={k} exceeds the {n - 1} neighbors available; using {n - 1}")
            k = n - 1
        return build_neighbor_graph(cloud, k)

    def check_m(self, cloud: PointCloud) -> None:
        if self.protocol.m > cloud.n_points:
            raise ParameterError(
                f"m={self.protocol.m} key points requested from {cloud.n_points} points"
            )

    @abstractmethod
    def execute(self, cloud: PointCloud) -> PipelineResult:
        """Run every stage on ``cloud``"""
