#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\utils\files.py                                              #
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
"""File system helpers shared by the repositories and pipelines."""
import os
from pathlib import Path
from typing import Union
# --------------------------------------------------------------------------- #
PathLike = Union[str, os.PathLike]
# --------------------------------------------------------------------------- #


def ensure_directory(dirpath: PathLike) -> Path:
    path = Path(dirpath)
    path.mkdir(parents=True, exist_ok=True)
    return path


def numfiles(dirpath: PathLike, suffix: str = None) -> int:
    """Number of files in a directory, optionally only those with suffix."""
    return len([f for f in os.listdir(dirpath)
                if suffix is None or f.endswith(suffix)])


def relative_posix(filepath: PathLike, start: PathLike) -> str:
    """Path of filepath relative to start, with forward slashes."""
    return Path(os.path.relpath(filepath, start)).as_posix()


def check_file(filepath: PathLike, logger, what: str = 'File') -> Path:
    path = Path(filepath)
    if not path.is_file():
        msg = "{} {} not found.".format(what, filepath)
        logger.error(msg)
        raise FileNotFoundError(msg)
    return path
