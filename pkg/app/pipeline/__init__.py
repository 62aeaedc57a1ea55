from app.pipeline.base import BasePipeline, PipelineMode, PipelineResult
from app.pipeline.inference import InferencePipeline
from app.pipeline.pipeline_factory import (
    PipelineFactory,
    run_inference_pipeline,
    run_training_pipeline,
)
from app.pipeline.training import TrainingPipeline


__all__ = [
    "BasePipeline",
    "PipelineMode",
    "PipelineResult",
    "InferencePipeline",
    "TrainingPipeline",
    "PipelineFactory",
    "run_inference_pipeline",
    "run_training_pipeline",
]
