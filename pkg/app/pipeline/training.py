from typing import Optional, Tuple

from app.config import TrainSampler
from app.logger import logger
from app.pipeline.base import BasePipeline, PipelineMode, PipelineResult
from app.resampling.resample import train_resample
from app.sampling.keypoints import ffps, fps, resolve_start, sws
from app.sampling.reweighting import filter_mask, isolation_rates, sampling_weights
from app.schema import PointCloud, SampleResult, WeightVector


class TrainingPipeline(BasePipeline):
    """Randomly resize the cloud, then draw key points by isolation-aware weights.

    ``protocol.train_sampler`` swaps the weighted draw for plain FPS or FFPS.
    """

    @property
    def mode(self) -> PipelineMode:
        return PipelineMode.TRAINING

    def sample(
        self, cloud: PointCloud
    ) -> Tuple[SampleResult, Optional[WeightVector]]:
        p = self.protocol
        sampler = TrainSampler(p.train_sampler)
        if sampler == TrainSampler.FPS:
            start = resolve_start(cloud, None, p.start_rule, p.seed)
            return fps(cloud, p.m, start), None

        isolation = isolation_rates(self.neighbor_graph(cloud))
        if sampler == TrainSampler.FFPS:
            weights = filter_mask(isolation, p.omega)
            return ffps(cloud, weights, p.m, p.start_rule, seed=p.seed), weights

        weights = sampling_weights(isolation, p.weight_transform, p.softmax_temperature)
        return sws(cloud, weights, p.m, p.seed), weights

    def execute(self, cloud: PointCloud) -> PipelineResult:
        p = self.protocol
        resampled = train_resample(cloud, p.rho, p.seed, p.k, p.downsample_mode)
        self.check_m(resampled)
        keypoints, weights = self.sample(resampled)
        logger.info(
            f"Training pipeline: {cloud.n_points} -> {resampled.n_points} points, "
            f"{p.m} key points by {TrainSampler(p.train_sampler).value}"
        )
        return PipelineResult(
            mode=self.mode, cloud=resampled, keypoints=keypoints, weights=weights
        )
