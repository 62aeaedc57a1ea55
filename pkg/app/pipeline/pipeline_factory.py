from typing import Optional, Tuple

from app.config import ProtocolConfig
from app.pipeline.base import BasePipeline, PipelineMode
from app.pipeline.inference import InferencePipeline
from app.pipeline.training import TrainingPipeline
from app.schema import PointCloud, SampleResult, WeightVector


class PipelineFactory:
    """Factory for the training and inference protocols"""

    @staticmethod
    def create_pipeline(
        mode: PipelineMode, protocol: Optional[ProtocolConfig] = None
    ) -> BasePipeline:
        pipelines = {
            PipelineMode.TRAINING: TrainingPipeline,
            PipelineMode.INFERENCE: InferencePipeline,
        }

        pipeline_class = pipelines.get(PipelineMode(mode))
        if not pipeline_class:
            raise ValueError(f"Unknown pipeline mode: {mode}")

        if protocol is None:
            return pipeline_class()
        return pipeline_class(protocol=protocol)


def run_inference_pipeline(
    cloud: PointCloud, cfg: Optional[ProtocolConfig] = None
) -> Tuple[PointCloud, SampleResult, WeightVector]:
    result = PipelineFactory.create_pipeline(PipelineMode.INFERENCE, cfg).execute(cloud)
    return result.cloud, result.keypoints, result.weights


def run_training_pipeline(
    cloud: PointCloud, cfg: Optional[ProtocolConfig] = None
) -> Tuple[PointCloud, SampleResult]:
    result = PipelineFactory.create_pipeline(PipelineMode.TRAINING, cfg).execute(cloud)
    return result.cloud, result.keypoints
