from app.logger import logger
from app.pipeline.base import BasePipeline, PipelineMode, PipelineResult
from app.resampling.resample import inference_resample
from app.sampling.keypoints import ffps
from app.sampling.reweighting import filter_mask, isolation_rates
from app.schema import PointCloud


class InferencePipeline(BasePipeline):
    """Restore the canonical size, mask the isolated tail, then run FFPS."""

    @property
    def mode(self) -> PipelineMode:
        return PipelineMode.INFERENCE

    def execute(self, cloud: PointCloud) -> PipelineResult:
        p = self.protocol
        prepared = inference_resample(cloud, p.target_n, p.seed, p.k)
        self.check_m(prepared)
        graph = self.neighbor_graph(prepared)
        weights = filter_mask(isolation_rates(graph), p.omega)
        keypoints = ffps(prepared, weights, p.m, p.start_rule, seed=p.seed)
        logger.info(
            f"Inference pipeline: {cloud.n_points} -> {prepared.n_points} points, "
            f"{int((~weights.mask).sum())} filtered, {p.m} key points"
        )
        return PipelineResult(
            mode=self.mode, cloud=prepared, keypoints=keypoints, weights=weights
        )
