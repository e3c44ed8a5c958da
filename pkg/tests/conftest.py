#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \tests\conftest.py                                               #
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
import logging

import numpy as np
import pytest

from src.domain.datasets import Dataset, Label, TimeSeriesEvent
from src.domain.synthesis import GeneratorConfig, build_dataset
from src.infrastructure.data.repository import save_events
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
SMALL_COUNTS = {Label.GENERATION_TRIP: 4, Label.LOAD_SHEDDING: 4,
                Label.OSCILLATION: 4}
# --------------------------------------------------------------------------- #


def make_event(event_id: str, label: Label, samples,
               sample_rate_hz: float = 10.0) -> TimeSeriesEvent:
    return TimeSeriesEvent(event_id=event_id, label=label,
                           samples=np.asarray(samples, dtype=np.float64),
                           sample_rate_hz=sample_rate_hz)


def reference_dataset(counts=(142, 145, 87)) -> Dataset:
    """Two-sample events with the given per-class counts."""
    events = []
    for label, count in zip(Label, counts):
        for k in range(count):
            events.append(make_event("{}_{:04d}".format(label.slug, k),
                                     label, [0.0, float(k)]))
    return Dataset.from_events(events)


@pytest.fixture(scope="class")
def generator_config():
    return GeneratorConfig(seed=7)


@pytest.fixture(scope="class")
def small_dataset(generator_config):
    """12 synthetic events, 4 per class, 60 s at 10 Hz."""
    return build_dataset(generator_config, SMALL_COUNTS)


@pytest.fixture(scope="class")
def manifest(small_dataset, tmp_path_factory):
    """Manifest path of small_dataset written to a temporary directory."""
    directory = tmp_path_factory.mktemp("events")
    return save_events(small_dataset, directory)
