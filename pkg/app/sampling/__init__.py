from app.sampling.keypoints import ffps, fps, resolve_start, sws
from app.sampling.reweighting import filter_mask, isolation_rates, sampling_weights


__all__ = [
    "ffps",
    "fps",
    "resolve_start",
    "sws",
    "filter_mask",
    "isolation_rates",
    "sampling_weights",
]
