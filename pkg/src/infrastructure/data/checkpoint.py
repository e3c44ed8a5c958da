#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\infrastructure\data\checkpoint.py                           #
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
"""Versioned binary checkpoint files.

Layout, all integers little-endian::

    magic      8 bytes  b'GAFCKPT\\x00'
    version    uint32
    kind       uint32 length + UTF-8 bytes
    metadata   uint32 length + UTF-8 JSON (sorted keys)
    n_arrays   uint32
    per array  uint32 name length, name, uint32 ndim, ndim x uint64 dims
    payload    every array as row-major float64, in table order
"""
from collections import OrderedDict
from dataclasses import dataclass, field
import json
import logging
from pathlib import Path
import struct
from typing import Dict, Mapping, Tuple

import numpy as np

from src.utils.files import PathLike, check_file, ensure_directory
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
MAGIC = b'GAFCKPT\x00'
VERSION = 1
# --------------------------------------------------------------------------- #


@dataclass
class Checkpoint:
    kind: str
    metadata: Dict = field(default_factory=dict)
    arrays: "OrderedDict[str, np.ndarray]" = field(
        default_factory=OrderedDict)


def _pack_text(text: str) -> bytes:
    raw = text.encode('utf-8')
    return struct.pack('<I', len(raw)) + raw


def save_checkpoint(path: PathLike, kind: str, metadata: Mapping,
                    arrays: Mapping[str, np.ndarray]) -> Path:
    path = Path(path)
    ensure_directory(path.parent)
    parts = [MAGIC, struct.pack('<I', VERSION), _pack_text(kind),
             _pack_text(json.dumps(metadata, sort_keys=True)),
             struct.pack('<I', len(arrays))]
    payload = []
    for name, array in arrays.items():
        array = np.asarray(array, dtype=np.float64)
        parts.append(_pack_text(name))
        parts.append(struct.pack('<I', array.ndim))
        parts.append(struct.pack('<{}Q'.format(array.ndim), *array.shape))
        payload.append(np.ascontiguousarray(array, dtype='<f8').tobytes())
    path.write_bytes(b''.join(parts + payload))
    logger.debug("Saved {} checkpoint with {} arrays to {}.".format(
        kind, len(arrays), path))
    return path


class _Reader:

    def __init__(self, data: bytes, path: Path) -> None:
        self._data = data
        self._offset = 0
        self._path = path

    def take(self, n: int) -> bytes:
        if self._offset + n > len(self._data):
            msg = "Checkpoint {} is truncated.".format(self._path)
            logger.error(msg)
            raise ValueError(msg)
        chunk = self._data[self._offset:self._offset + n]
        self._offset += n
        return chunk

    def unpack(self, fmt: str) -> Tuple:
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def text(self) -> str:
        (n,) = self.unpack('<I')
        return self.take(n).decode('utf-8')

    @property
    def remaining(self) -> int:
        return len(self._data) - self._offset


def load_checkpoint(path: PathLike) -> Checkpoint:
    path = check_file(path, logger, 'Checkpoint')
    reader = _Reader(path.read_bytes(), path)
    if reader.take(len(MAGIC)) != MAGIC:
        msg = "{} is not a checkpoint file.".format(path)
        logger.error(msg)
        raise ValueError(msg)
    (version,) = reader.unpack('<I')
    if version != VERSION:
        msg = "Checkpoint {} has version {}; expected {}.".format(
            path, version, VERSION)
        logger.error(msg)
        raise ValueError(msg)
    kind = reader.text()
    metadata = json.loads(reader.text())
    (n_arrays,) = reader.unpack('<I')
    table = []
    for _ in range(n_arrays):
        name = reader.text()
        (ndim,) = reader.unpack('<I')
        table.append((name, reader.unpack('<{}Q'.format(ndim))))
    arrays = OrderedDict()
    for name, shape in table:
        count = int(np.prod(shape, dtype=np.int64))
        arrays[name] = np.frombuffer(reader.take(8 * count), dtype='<f8')\
            .astype(np.float64).reshape(shape)
    if reader.remaining:
        msg = "Checkpoint {} has {} trailing bytes.".format(path,
                                                            reader.remaining)
        logger.error(msg)
        raise ValueError(msg)
    return Checkpoint(kind=kind, metadata=metadata, arrays=arrays)
