from app.resampling.downsample import center_neighborhood, lgb_downsample
from app.resampling.interpolation import (
    interpolation_candidates,
    lgp_interpolate,
    tangent_interpolant,
    tangent_projection,
)
from app.resampling.resample import (
    draw_size_delta,
    inference_resample,
    plan_upsample,
    train_resample,
    upsample,
)


__all__ = [
    "center_neighborhood",
    "lgb_downsample",
    "interpolation_candidates",
    "lgp_interpolate",
    "tangent_interpolant",
    "tangent_projection",
    "draw_size_delta",
    "inference_resample",
    "plan_upsample",
    "train_resample",
    "upsample",
]
