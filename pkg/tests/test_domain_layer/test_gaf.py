#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \tests\test_domain_layer\test_gaf.py                             #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Monday, September 13th 2021, 8:20:14 am                          #
# Modified : Sunday, September 19th 2021, 3:17:52 pm                          #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
import logging
import math

import numpy as np
import pytest

from src.domain.datasets import Label
from src.domain.features.build_features import FeatureMode, featurize, \
    feature_matrix, image_tensor
from src.domain.features.gaf import GafImage, encode_event, encode_series, \
    gaf_matrix, paa_reduce, polar_angles, rescale_min_max
from tests.conftest import make_event
from tests.test_utils.debugging import announce
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #
SQRT3_2 = math.sqrt(3.0) / 2.0
# --------------------------------------------------------------------------- #


@pytest.mark.gaf
class RescaleTests:

    @announce
    def test_endpoints(self):
        np.testing.assert_array_equal(rescale_min_max([1, 2, 3]),
                                      [0.0, 0.5, 1.0])
        np.testing.assert_array_equal(rescale_min_max([-10, 10]), [0.0, 1.0])

    @announce
    def test_constant_series(self):
        np.testing.assert_array_equal(rescale_min_max([5, 5, 5]),
                                      [0.5, 0.5, 0.5])

    @announce
    def test_rejects_bad_series(self):
        with pytest.raises(ValueError):
            rescale_min_max([])
        with pytest.raises(ValueError):
            rescale_min_max([1.0, np.inf])


@pytest.mark.gaf
class PolarAngleTests:

    @announce
    def test_table_values(self):
        np.testing.assert_allclose(polar_angles([0.0, 0.5, 1.0]),
                                   [math.pi / 2, math.pi / 3, 0.0],
                                   atol=1e-15)
        assert polar_angles([1.0])[0] == 0.0

    @announce
    def test_clamps_roundoff(self):
        theta = polar_angles([1.0 + 1e-15, -1e-15])
        assert theta[0] == 0.0
        assert theta[1] == pytest.approx(math.pi / 2, abs=1e-15)

    @announce
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            polar_angles([0.2, 1.1])


@pytest.mark.gaf
class GafMatrixTests:

    @announce
    def test_two_point_series(self):
        image = encode_series([0.0, 1.0], 2)
        np.testing.assert_allclose(image.values, [[-1.0, 0.0], [0.0, 1.0]],
                                   atol=1e-15)

    @announce
    def test_three_point_series(self):
        image = encode_series([0.0, 0.5, 1.0], 3)
        expected = [[-1.0, -SQRT3_2, 0.0],
                    [-SQRT3_2, -0.5, 0.5],
                    [0.0, 0.5, 1.0]]
        np.testing.assert_allclose(image.values, expected, atol=1e-15)

    @announce
    def test_algebraic_identities(self):
        rng = np.random.default_rng(2021)
        for _ in range(1000):
            n = int(rng.integers(2, 513))
            series = rng.normal(size=n) * rng.uniform(0.1, 50.0)
            x = rescale_min_max(series)
            g = gaf_matrix(polar_angles(x)).values
            assert np.array_equal(g, g.T)
            assert g.min() >= -1.0 and g.max() <= 1.0
            np.testing.assert_allclose(np.diag(g), 2.0 * x * x - 1.0,
                                       rtol=0, atol=1e-12)
            root = np.sqrt(1.0 - x * x)
            np.testing.assert_allclose(
                g, np.outer(x, x) - np.outer(root, root), rtol=0, atol=1e-12)
            recovered = GafImage(values=g).reconstruct_rescaled()
            conditioned = x > 1e-3
            np.testing.assert_allclose(recovered[conditioned], x[conditioned],
                                       rtol=0, atol=1e-12)
            np.testing.assert_allclose(recovered ** 2, x * x, rtol=0,
                                       atol=1e-12)

    @announce
    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            GafImage(values=np.zeros((2, 3)))


@pytest.mark.gaf
class PaaTests:

    @announce
    def test_even_bins(self):
        np.testing.assert_array_equal(paa_reduce([1, 2, 3, 4], 2), [1.5, 3.5])

    @announce
    def test_uneven_bins(self):
        np.testing.assert_array_equal(paa_reduce([1, 2, 3], 2), [1.5, 3.0])

    @announce
    def test_identity(self):
        series = np.random.default_rng(0).normal(size=17)
        np.testing.assert_array_equal(paa_reduce(series, 17), series)

    @announce
    def test_bin_bounds(self):
        series = np.arange(300.0) ** 2
        bounds = [math.ceil(k * 300 / 64) for k in range(65)]
        expected = [series[a:b].mean() for a, b in zip(bounds, bounds[1:])]
        assert set(np.diff(bounds)) == {4, 5}
        np.testing.assert_allclose(paa_reduce(series, 64), expected,
                                   rtol=1e-14)

    @announce
    def test_target_out_of_range(self):
        with pytest.raises(ValueError):
            paa_reduce([1, 2, 3], 4)
        with pytest.raises(ValueError):
            paa_reduce([1, 2, 3], 0)


@pytest.mark.gaf
class EncodeEventTests:

    @announce
    def test_shape(self):
        samples = np.sin(np.arange(600) / 10.0)
        image = encode_event(make_event('e', Label.OSCILLATION, samples),
                             30, 64)
        assert image.values.shape == (64, 64)
        assert image.source_event_id == 'e'

    @announce
    def test_constant_event(self):
        image = encode_event(make_event('c', Label.OSCILLATION,
                                        np.full(600, 3.0)), 30, 64)
        np.testing.assert_allclose(image.rescaled, 0.5)
        np.testing.assert_allclose(image.values, -0.5, rtol=0, atol=1e-15)

    @announce
    def test_reversed_event(self):
        samples = np.random.default_rng(4).normal(size=600).cumsum()
        forward = encode_event(make_event('f', Label.OSCILLATION, samples),
                               30, 60)
        window = samples[:300][::-1]
        backward = encode_series(window, 60)
        np.testing.assert_allclose(backward.values,
                                   forward.values[::-1, ::-1], rtol=0,
                                   atol=1e-12)

    @announce
    def test_rescale_provenance(self):
        image = encode_series([2.0, 4.0, 6.0], 3)
        assert image.rescale_min == 2.0
        assert image.rescale_max == 6.0


@pytest.mark.gaf
class FeaturizeTests:

    @announce
    def test_raw_series_shape(self):
        event = make_event('e', Label.GENERATION_TRIP, np.arange(600.0))
        assert featurize(event, FeatureMode.RAW_SERIES, 30, 64).shape == \
            (64,)

    @announce
    def test_flattened_gaf_shape(self):
        event = make_event('e', Label.GENERATION_TRIP, np.arange(600.0))
        assert featurize(event, FeatureMode.FLATTENED_GAF, 30, 64).shape == \
            (4096,)

    @announce
    def test_constant_event_flattened(self):
        event = make_event('c', Label.GENERATION_TRIP, np.zeros(600))
        np.testing.assert_allclose(featurize(event, 'gaf', 30, 64), -0.5,
                                   rtol=0, atol=1e-15)

    @announce
    def test_matrices(self, small_dataset):
        features, labels = feature_matrix(small_dataset, 'raw', 30, 16)
        assert features.shape == (12, 16)
        images, labels = image_tensor(small_dataset, 30, 16)
        assert images.shape == (12, 16, 16)
        np.testing.assert_array_equal(labels, small_dataset.labels)
