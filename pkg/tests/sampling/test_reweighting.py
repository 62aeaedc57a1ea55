import numpy as np
import pytest

from app.config import WeightTransform
from app.exceptions import ParameterError
from app.geometry.knn import build_neighbor_graph
from app.sampling.reweighting import filter_mask, isolation_rates, sampling_weights
from app.schema import PointCloud, WeightVector


COLLINEAR_ISOLATION = [0.5, 0.0, 0.0, 0.5, 1.0]


def test_collinear_isolation(collinear):
    wv = isolation_rates(build_neighbor_graph(collinear, 2))

    np.testing.assert_array_equal(wv.isolation, COLLINEAR_ISOLATION)
    assert int(np.argmax(wv.isolation)) == 4


def test_uniform_lattice_interior_identical():
    cloud = PointCloud(points=[[float(x), 0.0, 0.0] for x in range(12)])
    wv = isolation_rates(build_neighbor_graph(cloud, 2))

    interior = wv.isolation[2:-2]
    assert np.all(interior == interior[0])


@pytest.mark.parametrize("scale", [2.0**-10, 0.5, 8.0, 2.0**14])
def test_scale_invariant(make_sphere_with_outliers, scale):
    cloud, _ = make_sphere_with_outliers(n=256, n_outliers=10)
    scaled = PointCloud(points=cloud.points * scale)

    wv = isolation_rates(build_neighbor_graph(cloud, 20))
    scaled_wv = isolation_rates(build_neighbor_graph(scaled, 20))

    np.testing.assert_array_equal(wv.isolation, scaled_wv.isolation)


def test_far_outlier_is_most_isolated(make_sphere):
    sphere = make_sphere(128)
    cloud = sphere.append([[5.0, 5.0, 5.0]])
    wv = isolation_rates(build_neighbor_graph(cloud, 20))

    assert wv.isolation[-1] == 1.0
    assert np.all(wv.isolation[:-1] < wv.isolation[-1])


def test_complement_weights():
    wv = sampling_weights(WeightVector(isolation=np.array(COLLINEAR_ISOLATION)))

    np.testing.assert_allclose(
        wv.sampling_weight, [1 / 6, 1 / 3, 1 / 3, 1 / 6, 0.0], atol=1e-15
    )
    assert int(np.argmin(wv.sampling_weight)) == 4


@pytest.mark.parametrize("value", [0.0, 0.35, 1.0])
def test_equal_isolation_gives_uniform_weights(value):
    wv = sampling_weights(WeightVector(isolation=np.full(8, value)))

    np.testing.assert_allclose(wv.sampling_weight, np.full(8, 1 / 8))


def test_softmax_weights_decrease_with_isolation():
    wv = sampling_weights(
        WeightVector(isolation=np.array(COLLINEAR_ISOLATION)),
        transform=WeightTransform.SOFTMAX,
        temperature=0.2,
    )

    assert wv.sampling_weight.sum() == pytest.approx(1.0)
    assert wv.sampling_weight[1] > wv.sampling_weight[0] > wv.sampling_weight[4]


def test_weights_keep_isolation():
    isolation = np.array(COLLINEAR_ISOLATION)
    wv = sampling_weights(WeightVector(isolation=isolation))

    np.testing.assert_array_equal(wv.isolation, isolation)


def test_filter_mask_quantile():
    wv = filter_mask(WeightVector(isolation=np.array(COLLINEAR_ISOLATION)), 0.79)

    np.testing.assert_array_equal(wv.mask, [True, True, True, True, False])
    assert wv.omega == 0.79


def test_filter_mask_full_omega(make_sphere_with_outliers):
    cloud, _ = make_sphere_with_outliers(n=200, n_outliers=10)
    wv = filter_mask(isolation_rates(build_neighbor_graph(cloud, 20)), 1.0)

    assert wv.mask.all()


def test_filter_mask_ties_keep_everything():
    wv = filter_mask(WeightVector(isolation=np.full(20, 0.25)), 0.5)

    assert wv.mask.all()


def test_filter_mask_keeps_ceil_omega_n():
    isolation = np.linspace(0.0, 1.0, 30)
    for omega in (0.1, 0.33, 0.5, 0.95):
        mask = filter_mask(WeightVector(isolation=isolation), omega).mask
        assert mask.sum() >= np.ceil(omega * 30 - 1e-9)


def test_filter_mask_never_empty():
    wv = filter_mask(WeightVector(isolation=np.array([1.0, 0.9, 0.8])), 0.01)

    np.testing.assert_array_equal(wv.mask, [False, False, True])


def test_filter_mask_monotone_in_omega(make_sphere_with_outliers):
    cloud, _ = make_sphere_with_outliers(n=300, n_outliers=20)
    wv = isolation_rates(build_neighbor_graph(cloud, 20))

    masks = [filter_mask(wv, omega).mask for omega in np.linspace(0.05, 1.0, 20)]
    for tighter, looser in zip(masks, masks[1:]):
        assert np.all(looser[tighter])


@pytest.mark.parametrize("omega", [0.0, -0.1, 1.01])
def test_filter_mask_rejects_omega(omega):
    with pytest.raises(ParameterError):
        filter_mask(WeightVector(isolation=np.zeros(4)), omega)
