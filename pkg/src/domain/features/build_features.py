#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\features\build_features.py                           #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Tuesday, September 7th 2021, 2:48:03 pm                          #
# Modified : Sunday, September 19th 2021, 3:17:52 pm                          #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
"""Builds model inputs from events: GAF image stacks and baseline vectors."""
from enum import Enum
import logging
from typing import Tuple

import numpy as np

from ..datasets import Dataset, TimeSeriesEvent, truncate_window
from .gaf import DEFAULT_IMAGE_SIZE, DEFAULT_WINDOW_S, encode_event, \
    paa_reduce
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


class FeatureMode(Enum):
    RAW_SERIES = 'raw'
    FLATTENED_GAF = 'gaf'


def featurize(event: TimeSeriesEvent,
              mode: FeatureMode = FeatureMode.RAW_SERIES,
              window_s: float = DEFAULT_WINDOW_S,
              image_size: int = DEFAULT_IMAGE_SIZE) -> np.ndarray:
    """Feature vector of one event for the decision tree and SVM baselines.

    RAW_SERIES is the PAA-reduced truncated window (image_size values);
    FLATTENED_GAF is the row-major flatten of the GAF image
    (image_size ** 2 values).
    """
    mode = FeatureMode(mode)
    if mode is FeatureMode.RAW_SERIES:
        window = truncate_window(event, window_s)
        return paa_reduce(window.samples, image_size)
    return encode_event(event, window_s, image_size).values.reshape(-1).copy()


def feature_matrix(data: Dataset,
                   mode: FeatureMode = FeatureMode.RAW_SERIES,
                   window_s: float = DEFAULT_WINDOW_S,
                   image_size: int = DEFAULT_IMAGE_SIZE
                   ) -> Tuple[np.ndarray, np.ndarray]:
    """Stacks featurize over a dataset. Returns (features, class indices)."""
    features = np.stack([featurize(event, mode, window_s, image_size)
                         for event in data])
    return features, data.labels


def image_tensor(data: Dataset, window_s: float = DEFAULT_WINDOW_S,
                 image_size: int = DEFAULT_IMAGE_SIZE
                 ) -> Tuple[np.ndarray, np.ndarray]:
    """GAF images of a dataset as an (N, S, S) array plus class indices."""
    images = np.stack([encode_event(event, window_s, image_size).values
                       for event in data])
    logger.debug("Encoded {} events into {}x{} GAF images.".format(
        len(data), image_size, image_size))
    return images, data.labels
