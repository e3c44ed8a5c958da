#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\datasets.py                                          #
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
"""Defines the disturbance event, dataset and split entities."""
from dataclasses import dataclass, field
from enum import Enum
import logging
import math
from typing import Dict, Iterable, Iterator, List, Tuple

import numpy as np
import pandas as pd
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #
#                                 LABEL                                       #
# --------------------------------------------------------------------------- #


class Label(Enum):
    """Disturbance classes. The value is the class index used by the models."""

    GENERATION_TRIP = 0
    LOAD_SHEDDING = 1
    OSCILLATION = 2

    @property
    def slug(self) -> str:
        """Manifest spelling of the label, e.g. 'generation_trip'."""
        return self.name.lower()

    @classmethod
    def from_slug(cls, slug: str) -> "Label":
        for label in cls:
            if label.slug == slug:
                return label
        msg = "Unknown label '{}'. Expected one of {}.".format(
            slug, [label.slug for label in cls])
        logger.error(msg)
        raise ValueError(msg)

    @classmethod
    def from_index(cls, index: int) -> "Label":
        try:
            return cls(int(index))
        except ValueError:
            msg = "Invalid class index {}.".format(index)
            logger.error(msg)
            raise ValueError(msg)


N_CLASSES = len(Label)

# --------------------------------------------------------------------------- #
#                            TIME SERIES EVENT                                #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class TimeSeriesEvent:
    """One labeled angle series sampled at a fixed rate.

    Arguments:
        event_id (str): Unique identifier of the event.
        label (Label): Disturbance class.
        samples (np.ndarray): Angle values in degrees, in time order.
        sample_rate_hz (float): Sampling rate. Defaults to 10 Hz.
    """

    event_id: str
    label: Label
    samples: np.ndarray
    sample_rate_hz: float = 10.0

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.float64).reshape(-1)
        samples.setflags(write=False)
        object.__setattr__(self, 'samples', samples)
        self._validate()

    def _validate(self) -> None:
        if self.samples.size == 0:
            msg = "Event {} has no samples.".format(self.event_id)
            logger.error(msg)
            raise ValueError(msg)
        if not self.sample_rate_hz > 0:
            msg = "Event {} has non-positive sample rate {}.".format(
                self.event_id, self.sample_rate_hz)
            logger.error(msg)
            raise ValueError(msg)
        if not np.all(np.isfinite(self.samples)):
            msg = "Event {} contains non-finite samples.".format(
                self.event_id)
            logger.error(msg)
            raise ValueError(msg)
        if not isinstance(self.label, Label):
            msg = "Event {} label must be a Label, got {!r}.".format(
                self.event_id, self.label)
            logger.error(msg)
            raise ValueError(msg)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz

    @property
    def timestamps(self) -> np.ndarray:
        return np.arange(len(self), dtype=np.float64) / self.sample_rate_hz

    def with_samples(self, samples: np.ndarray) -> "TimeSeriesEvent":
        return TimeSeriesEvent(event_id=self.event_id, label=self.label,
                               samples=samples,
                               sample_rate_hz=self.sample_rate_hz)

# --------------------------------------------------------------------------- #
#                                DATASET                                      #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Dataset:
    """An ordered, immutable collection of events with unique identifiers."""

    events: Tuple[TimeSeriesEvent, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'events', tuple(self.events))
        seen = set()
        for event in self.events:
            if event.event_id in seen:
                msg = "Duplicate event_id '{}'.".format(event.event_id)
                logger.error(msg)
                raise ValueError(msg)
            seen.add(event.event_id)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[TimeSeriesEvent]:
        return iter(self.events)

    def __getitem__(self, index: int) -> TimeSeriesEvent:
        return self.events[index]

    @property
    def class_counts(self) -> Dict[Label, int]:
        """Exhaustive recount of events per label, every label present."""
        counts = {label: 0 for label in Label}
        for event in self.events:
            counts[event.label] += 1
        return counts

    @property
    def event_ids(self) -> List[str]:
        return [event.event_id for event in self.events]

    @property
    def labels(self) -> np.ndarray:
        return np.array([event.label.value for event in self.events],
                        dtype=np.int64)

    def by_label(self, label: Label) -> List[TimeSeriesEvent]:
        return [event for event in self.events if event.label is label]

    def summary(self) -> pd.Series:
        """Class counts as a Series indexed by label slug."""
        counts = self.class_counts
        return pd.Series({label.slug: counts[label] for label in Label},
                         name='events')

    @classmethod
    def from_events(cls, events: Iterable[TimeSeriesEvent]) -> "Dataset":
        return cls(events=tuple(events))

# --------------------------------------------------------------------------- #
#                               SPLIT RESULT                                  #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class SplitResult:
    train: Dataset
    test: Dataset
    fraction: float
    seed: int

# --------------------------------------------------------------------------- #
#                               OPERATIONS                                    #
# --------------------------------------------------------------------------- #


def truncate_window(event: TimeSeriesEvent, seconds: float) -> TimeSeriesEvent:
    """Returns the first floor(seconds x rate) samples of the event."""
    if not seconds > 0:
        msg = "Window must be positive, got {}.".format(seconds)
        logger.error(msg)
        raise ValueError(msg)
    n = int(math.floor(seconds * event.sample_rate_hz + 1e-9))
    if n > len(event):
        msg = "Window of {} s ({} samples) exceeds event {} of {} samples."\
            .format(seconds, n, event.event_id, len(event))
        logger.error(msg)
        raise ValueError(msg)
    if n == 0:
        msg = "Window of {} s holds no samples at {} Hz.".format(
            seconds, event.sample_rate_hz)
        logger.error(msg)
        raise ValueError(msg)
    return event.with_samples(event.samples[:n])


def split_rng(seed: int) -> np.random.Generator:
    """PCG64 stream used for dataset splitting."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def stratified_split(data: Dataset, fraction: float,
                     seed: int) -> SplitResult:
    """Per-class seeded shuffle; the first floor(fraction x count) train.

    Events of each class are ordered by event_id before shuffling so the
    result depends only on the set of events, the fraction and the seed.
    Classes are visited in label index order, all drawing from one PCG64
    stream seeded with ``seed``.
    """
    if not 0 < fraction < 1:
        msg = "Split fraction must lie in (0, 1), got {}.".format(fraction)
        logger.error(msg)
        raise ValueError(msg)
    if seed < 0:
        msg = "Seed must be an unsigned integer, got {}.".format(seed)
        logger.error(msg)
        raise ValueError(msg)

    rng = split_rng(seed)
    train, test = [], []
    for label in Label:
        events = sorted(data.by_label(label), key=lambda e: e.event_id)
        if len(events) < 2:
            msg = "Class {} has {} event(s); at least 2 are required."\
                .format(label.slug, len(events))
            logger.error(msg)
            raise ValueError(msg)
        order = rng.permutation(len(events))
        n_train = int(math.floor(fraction * len(events) + 1e-9))
        train.extend(events[i] for i in order[:n_train])
        test.extend(events[i] for i in order[n_train:])

    logger.debug("Split {} events at fraction {:.4f}: {} train, {} test."
                 .format(len(data), fraction, len(train), len(test)))
    return SplitResult(train=Dataset.from_events(train),
                       test=Dataset.from_events(test),
                       fraction=fraction, seed=seed)
