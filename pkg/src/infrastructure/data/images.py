#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\infrastructure\data\images.py                               #
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
"""Image files for GAF matrices: 8-bit binary PGM and raw float64 matrices."""
import logging
from pathlib import Path

import numpy as np

from src.domain.features.gaf import GafImage
from src.utils.files import PathLike, check_file, ensure_directory
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
PGM_MAGIC = b'P5'
PGM_MAXVAL = 255
GAF_SUFFIX = '.gaf'
PGM_SUFFIX = '.pgm'
# --------------------------------------------------------------------------- #
#                                   PGM                                       #
# --------------------------------------------------------------------------- #


def to_pixels(values: np.ndarray) -> np.ndarray:
    """round_half_up((g + 1) / 2 x 255) as uint8."""
    scaled = (np.asarray(values, dtype=np.float64) + 1.0) / 2.0 * PGM_MAXVAL
    return np.clip(np.floor(scaled + 0.5), 0, PGM_MAXVAL).astype(np.uint8)


def export_pgm(image: GafImage, path: PathLike) -> Path:
    """Writes the image as a binary P5 PGM, row-major, maxval 255."""
    path = Path(path)
    ensure_directory(path.parent)
    header = b'%s\n%d %d\n%d\n' % (PGM_MAGIC, image.size, image.size,
                                   PGM_MAXVAL)
    try:
        with open(path, 'wb') as f:
            f.write(header)
            f.write(to_pixels(image.values).tobytes(order='C'))
    except OSError as error:
        logger.error("Could not write PGM {}: {}".format(path, error))
        raise
    return path


def read_pgm(path: PathLike) -> np.ndarray:
    """Pixel matrix of a binary PGM written by export_pgm."""
    data = check_file(path, logger, 'PGM file').read_bytes()
    fields = data.split(maxsplit=4)
    if len(fields) < 4 or fields[0] != PGM_MAGIC:
        msg = "{} is not a binary PGM.".format(path)
        logger.error(msg)
        raise ValueError(msg)
    width, height, maxval = (int(v) for v in fields[1:4])
    body = data[len(data) - width * height:]
    if maxval != PGM_MAXVAL or len(data) < width * height:
        msg = "{} has an unsupported PGM layout.".format(path)
        logger.error(msg)
        raise ValueError(msg)
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width)

# --------------------------------------------------------------------------- #
#                            RAW GAF MATRICES                                 #
# --------------------------------------------------------------------------- #


def write_gaf_matrix(image: GafImage, path: PathLike) -> Path:
    """8-byte little-endian size S, then S x S little-endian float64."""
    path = Path(path)
    ensure_directory(path.parent)
    with open(path, 'wb') as f:
        f.write(np.array([image.size], dtype='<u8').tobytes())
        f.write(np.ascontiguousarray(image.values, dtype='<f8').tobytes())
    return path


def read_gaf_matrix(path: PathLike, source_event_id: str = '') -> GafImage:
    data = check_file(path, logger, 'GAF file').read_bytes()
    if len(data) < 8:
        msg = "{} is too short for a GAF matrix.".format(path)
        logger.error(msg)
        raise ValueError(msg)
    size = int(np.frombuffer(data[:8], dtype='<u8')[0])
    if len(data) != 8 + 8 * size * size:
        msg = "{} declares size {} but holds {} payload bytes.".format(
            path, size, len(data) - 8)
        logger.error(msg)
        raise ValueError(msg)
    values = np.frombuffer(data[8:], dtype='<f8').reshape(size, size)
    return GafImage(values=values.astype(np.float64),
                    source_event_id=source_event_id)
