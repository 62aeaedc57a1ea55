import numpy as np
import pytest
from pydantic import ValidationError

from app.config import (
    Config,
    DownsampleMode,
    ProtocolConfig,
    StartRule,
    TrainSampler,
    config,
)
from app.exceptions import ParameterError
from app.rng import STREAM_FILE, STREAM_INTERPOLATION, derive_rng, derive_seed
from app.schema import PointCloud, ResamplePlan, SampleResult, WeightVector


def test_config_is_singleton():
    assert Config() is config


def test_protocol_defaults():
    protocol = config.protocol

    assert protocol.k == 20
    assert protocol.omega == 0.95
    assert protocol.rho == 0.25
    assert protocol.target_n == 1024
    assert protocol.start_rule == StartRule.MAX_CENTROID_DISTANCE
    assert protocol.train_sampler == TrainSampler.SWS
    assert protocol.downsample_mode == DownsampleMode.LGB


@pytest.mark.parametrize(
    "field, value",
    [
        ("k", 0),
        ("omega", 0.0),
        ("rho", 1.0),
        ("seed", -2),
        ("m", 0),
        ("train_sampler", "grid"),
        ("downsample_mode", "ball"),
    ],
)
def test_protocol_validation(field, value):
    with pytest.raises(ValidationError):
        ProtocolConfig(**{field: value})


def test_reload_keeps_settings():
    before = config.protocol

    assert config.reload_config()
    assert config.protocol == before


def test_streams_reproducible():
    a = derive_rng(3, STREAM_INTERPOLATION, 0, 17).random(5)
    b = derive_rng(3, STREAM_INTERPOLATION, 0, 17).random(5)
    c = derive_rng(3, STREAM_INTERPOLATION, 0, 18).random(5)

    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_file_seeds_differ():
    seeds = {derive_seed(0, STREAM_FILE, index) for index in range(50)}

    assert len(seeds) == 50
    assert derive_seed(0, STREAM_FILE, 4) == derive_seed(0, STREAM_FILE, 4)


@pytest.mark.parametrize("seed", [-1, None])
def test_rejects_bad_seed(seed):
    with pytest.raises(ParameterError):
        derive_rng(seed, 1)


def test_cloud_is_read_only(square):
    with pytest.raises(ValueError):
        square.points[0, 0] = 5.0


def test_cloud_rejects_non_unit_normals():
    with pytest.raises(ValidationError):
        PointCloud(points=[[0.0, 0.0, 0.0]], normals=[[0.0, 0.0, 2.0]])


def test_cloud_rejects_normal_count():
    with pytest.raises(ValidationError):
        PointCloud(points=[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]], normals=[[0.0, 0.0, 1.0]])


def test_append_drops_normals_unless_both_sides_have_them(make_sphere):
    cloud = make_sphere(10, with_normals=True)

    assert not cloud.append([[2.0, 0.0, 0.0]]).has_normals
    assert cloud.append([[2.0, 0.0, 0.0]], [[1.0, 0.0, 0.0]]).n_points == 11


def test_weight_vector_invariants():
    with pytest.raises(ValidationError):
        WeightVector(isolation=np.array([0.5, 1.5]))
    with pytest.raises(ValidationError):
        WeightVector(isolation=np.zeros(2), sampling_weight=np.array([0.5, 0.6]))
    with pytest.raises(ValidationError):
        WeightVector(isolation=np.zeros(2), mask=np.zeros(2, dtype=bool))


def test_sample_result_distinct():
    with pytest.raises(ValidationError):
        SampleResult(indices=[1, 1], method="fps")


def test_plan_size_matches_delta():
    with pytest.raises(ValidationError):
        ResamplePlan(delta_n=-2, selected=[4])
