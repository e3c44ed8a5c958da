#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\application\extract.py                                      #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Saturday, September 11th 2021, 4:31:56 pm                        #
# Modified : Friday, September 17th 2021, 10:44:08 am                         #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
"""Extract step: produces the event dataset from the synthetic generator."""
import logging
from pathlib import Path
from typing import Mapping, Optional

from src.application.base import Operator
from src.domain.datasets import Dataset, Label
from src.domain.synthesis import DEFAULT_COUNTS, GeneratorConfig, \
    build_dataset
from src.infrastructure.data.repository import load_events, save_events
from src.utils.files import PathLike
from src.utils.logger import exception_handler
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


def parse_counts(counts: Optional[Mapping]) -> dict:
    """Maps label slugs (or Labels) to counts; absent labels keep defaults."""
    parsed = dict(DEFAULT_COUNTS)
    for key, value in (counts or {}).items():
        label = key if isinstance(key, Label) else Label.from_slug(key)
        parsed[label] = int(value)
    return parsed


class GenerateEvents(Operator):
    """Generates a synthetic dataset and writes its CSVs and manifest.

    Arguments:
        cfg (GeneratorConfig): Generator parameters, seed included.
        destination (str): Output directory.
        counts (dict): Events per label slug. Defaults to 142/145/87.
    """

    def __init__(self, cfg: GeneratorConfig, destination: PathLike,
                 counts: Mapping = None,
                 task_id: str = 'generate') -> None:
        super(GenerateEvents, self).__init__(task_id)
        self._cfg = cfg
        self._destination = Path(destination)
        self._counts = parse_counts(counts)

    @exception_handler()
    def execute(self, context: dict = None) -> Path:
        data = build_dataset(self._cfg, self._counts)
        manifest = save_events(data, self._destination)
        if context is not None:
            context['dataset'] = data
            context['manifest'] = manifest
        return manifest


def load_or_generate(manifest: Optional[PathLike],
                     cfg: GeneratorConfig,
                     counts: Mapping = None) -> Dataset:
    """Events from a manifest when given, else from the generator."""
    if manifest is not None:
        return load_events(manifest)
    return build_dataset(cfg, parse_counts(counts))
