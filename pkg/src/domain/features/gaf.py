#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\features\gaf.py                                      #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Thursday, September 9th 2021, 11:05:27 am                        #
# Modified : Tuesday, September 21st 2021, 9:58:21 am                         #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
"""Gramian Angular (summation) Field encoding of angle series.

The encoder rescales a series to [0, 1] by its own min and max, maps each
value to a polar angle theta = arccos(x), and forms G[i, j] =
cos(theta_i + theta_j). Long series are first shortened by piecewise
aggregate approximation so the image has a fixed side length.
"""
from dataclasses import dataclass
import logging

import numpy as np

from ..datasets import TimeSeriesEvent, truncate_window
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
CLAMP_TOLERANCE = 1e-12
DEFAULT_IMAGE_SIZE = 64
DEFAULT_WINDOW_S = 30.0
# --------------------------------------------------------------------------- #
#                                GAF IMAGE                                    #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class GafImage:
    """Square GAF matrix with the rescaling provenance it was built from.

    Arguments:
        values (np.ndarray): S x S matrix with entries in [-1, 1].
        rescaled (np.ndarray): The rescaled series the matrix encodes.
        source_event_id (str): Identifier of the encoded event.
        rescale_min (float): min(X) used by the rescale.
        rescale_max (float): max(X) used by the rescale.
    """

    values: np.ndarray
    rescaled: np.ndarray = None
    source_event_id: str = ''
    rescale_min: float = 0.0
    rescale_max: float = 1.0

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1] or \
                values.shape[0] < 1:
            msg = "GAF values must be a non-empty square matrix, got shape"\
                " {}.".format(values.shape)
            logger.error(msg)
            raise ValueError(msg)
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)
        if self.rescaled is None:
            rescaled = np.sqrt(np.clip((np.diag(values) + 1.0) / 2.0,
                                       0.0, 1.0))
        else:
            rescaled = np.array(self.rescaled, dtype=np.float64)
        rescaled.setflags(write=False)
        object.__setattr__(self, 'rescaled', rescaled)

    @property
    def size(self) -> int:
        return int(self.values.shape[0])

    def reconstruct_rescaled(self) -> np.ndarray:
        """Recovers the rescaled series from the diagonal."""
        return np.sqrt((np.diag(self.values) + 1.0) / 2.0)

# --------------------------------------------------------------------------- #
#                               OPERATIONS                                    #
# --------------------------------------------------------------------------- #


def _as_series(series) -> np.ndarray:
    x = np.asarray(series, dtype=np.float64).reshape(-1)
    if x.size == 0:
        msg = "Series is empty."
        logger.error(msg)
        raise ValueError(msg)
    if not np.all(np.isfinite(x)):
        msg = "Series contains non-finite values."
        logger.error(msg)
        raise ValueError(msg)
    return x


def rescale_min_max(series) -> np.ndarray:
    """Min-max rescale into [0, 1]; a constant series maps to 0.5."""
    x = _as_series(series)
    low, high = x.min(), x.max()
    if high == low:
        return np.full(x.shape, 0.5)
    return (x - low) / (high - low)


def polar_angles(rescaled) -> np.ndarray:
    """theta = arccos(x) after clamping roundoff excursions into [0, 1]."""
    x = np.asarray(rescaled, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(x)):
        msg = "Rescaled series contains non-finite values."
        logger.error(msg)
        raise ValueError(msg)
    if np.any(x < -CLAMP_TOLERANCE) or np.any(x > 1.0 + CLAMP_TOLERANCE):
        msg = "Rescaled values must lie in [0, 1]; found range [{}, {}]."\
            .format(x.min(), x.max())
        logger.error(msg)
        raise ValueError(msg)
    return np.arccos(np.clip(x, 0.0, 1.0))


def gaf_matrix(angles, source_event_id: str = '',
               rescale_min: float = 0.0,
               rescale_max: float = 1.0) -> GafImage:
    """G[i, j] = cos(theta_i + theta_j), each unordered pair computed once."""
    theta = np.asarray(angles, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(theta)):
        msg = "Angles contain non-finite values."
        logger.error(msg)
        raise ValueError(msg)
    upper = np.triu(np.cos(theta[:, None] + theta[None, :]))
    g = upper + np.triu(upper, k=1).T
    return GafImage(values=np.clip(g, -1.0, 1.0), rescaled=np.cos(theta),
                    source_event_id=source_event_id,
                    rescale_min=rescale_min, rescale_max=rescale_max)


def paa_reduce(series, target_len: int) -> np.ndarray:
    """Piecewise aggregate approximation onto target_len contiguous bins.

    Bin k covers indices [ceil(k n / S), ceil((k + 1) n / S)), so bin sizes
    differ by at most one.
    """
    x = _as_series(series)
    n = x.size
    target_len = int(target_len)
    if target_len < 1 or target_len > n:
        msg = "PAA target length {} must lie in [1, {}].".format(
            target_len, n)
        logger.error(msg)
        raise ValueError(msg)
    if target_len == n:
        return x.copy()
    bounds = -((-np.arange(target_len + 1) * n) // target_len)
    sums = np.add.reduceat(x, bounds[:-1])
    return sums / np.diff(bounds)


def encode_series(series, image_size: int,
                  source_event_id: str = '') -> GafImage:
    x = paa_reduce(series, image_size)
    rescaled = rescale_min_max(x)
    image = gaf_matrix(polar_angles(rescaled),
                       source_event_id=source_event_id,
                       rescale_min=float(x.min()),
                       rescale_max=float(x.max()))
    return GafImage(values=image.values, rescaled=rescaled,
                    source_event_id=source_event_id,
                    rescale_min=image.rescale_min,
                    rescale_max=image.rescale_max)


def encode_event(event: TimeSeriesEvent, window_s: float = DEFAULT_WINDOW_S,
                 image_size: int = DEFAULT_IMAGE_SIZE) -> GafImage:
    """truncate_window -> paa_reduce -> rescale -> polar angles -> GAF."""
    window = truncate_window(event, window_s)
    return encode_series(window.samples, image_size,
                         source_event_id=event.event_id)
