#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \tests\test_infrastructure_layer\test_images.py                  #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Monday, September 6th 2021, 9:12:40 am                           #
# Modified : Friday, September 17th 2021, 10:44:08 am                         #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
import logging

import numpy as np
import pytest

from src.domain.features.gaf import GafImage, encode_series
from src.infrastructure.data.images import export_pgm, read_gaf_matrix, \
    read_pgm, to_pixels, write_gaf_matrix
from tests.test_utils.debugging import announce
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


@pytest.mark.images
class PgmTests:

    @announce
    def test_pixel_mapping(self):
        np.testing.assert_array_equal(to_pixels(np.array([-1.0, 0.0, 1.0])),
                                      [0, 128, 255])
        assert to_pixels(np.array([-0.5]))[0] == 64

    @announce
    def test_two_by_two_body(self, tmp_path):
        image = GafImage(values=np.array([[-1.0, 0.0], [0.0, 1.0]]))
        data = export_pgm(image, tmp_path / 'small.pgm').read_bytes()
        assert data == b'P5\n2 2\n255\n' + bytes([0, 128, 128, 255])

    @announce
    def test_constant_event_bytes(self, tmp_path):
        image = encode_series(np.full(300, 7.0), 64)
        data = export_pgm(image, tmp_path / 'flat.pgm').read_bytes()
        assert data == b'P5\n64 64\n255\n' + bytes([64]) * 4096

    @announce
    def test_read_back(self, tmp_path):
        image = encode_series(np.sin(np.arange(100) / 7.0), 20)
        path = export_pgm(image, tmp_path / 'nested' / 'wave.pgm')
        np.testing.assert_array_equal(read_pgm(path), to_pixels(image.values))

    @announce
    def test_not_a_pgm(self, tmp_path):
        path = tmp_path / 'text.pgm'
        path.write_bytes(b'P2\n1 1\n255\n0')
        with pytest.raises(ValueError):
            read_pgm(path)


@pytest.mark.images
class GafMatrixFileTests:

    @announce
    def test_round_trip(self, tmp_path):
        image = encode_series(np.random.default_rng(1).normal(size=90), 30)
        path = write_gaf_matrix(image, tmp_path / 'wave.gaf')
        assert path.stat().st_size == 8 + 8 * 30 * 30
        restored = read_gaf_matrix(path, 'wave')
        np.testing.assert_array_equal(restored.values, image.values)
        assert restored.source_event_id == 'wave'

    @announce
    def test_size_mismatch(self, tmp_path):
        path = write_gaf_matrix(encode_series([1.0, 2.0, 3.0], 3),
                                tmp_path / 'short.gaf')
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(ValueError):
            read_gaf_matrix(path)
        path.write_bytes(b'\x01')
        with pytest.raises(ValueError):
            read_gaf_matrix(path)
