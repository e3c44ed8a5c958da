#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\synthesis.py                                         #
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
"""Synthetic angle-series generator for the three disturbance classes.

Each waveform is a closed-form expression of the time since onset
``t' = t - onset`` evaluated on the sample grid, plus optional Gaussian
noise. Before onset every waveform sits at its offset ``theta0``.

    generation trip : theta0 - A (t' - tau (1 - exp(-t'/tau)))
    load shedding   : theta0 + A (t' - tau (1 - exp(-t'/tau)))
    oscillation     : theta0 + B exp(-zeta w t') sin(w t' + phi), w = 2 pi f

Every event draws from its own PCG64 stream keyed on (seed, event index),
so a dataset is identical however the events are scheduled.
"""
from dataclasses import dataclass, field, asdict
import logging
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from .datasets import Dataset, Label, TimeSeriesEvent
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
Range = Tuple[float, float]
# --------------------------------------------------------------------------- #
#                           GENERATOR CONFIGURATION                           #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of the synthetic generator.

    Ranges are closed intervals sampled uniformly; a range with equal ends
    fixes the parameter. Amplitudes of the ramp classes are in degrees per
    second of post-onset drift.
    """

    sample_rate_hz: float = 10.0
    duration_s: float = 60.0
    noise_sigma_deg: float = 0.3
    event_onset_s: float = 5.0
    theta0_range_deg: Range = (-1.0, 1.0)
    step_amplitude_deg: Range = (0.2, 1.0)
    time_constant_s: Range = (0.5, 4.0)
    osc_freq_hz: Range = (0.2, 1.0)
    osc_damping: Range = (0.02, 0.15)
    osc_amplitude_deg: Range = (1.0, 4.0)
    osc_phase_range_rad: Range = (0.0, 0.0)
    seed: int = 0

    def __post_init__(self) -> None:
        self._validate()

    def _validate(self) -> None:
        ranges = {k: v for k, v in asdict(self).items()
                  if isinstance(v, (tuple, list))}
        for name, bounds in ranges.items():
            low, high = bounds
            if low > high:
                msg = "GeneratorConfig.{} has min {} > max {}.".format(
                    name, low, high)
                logger.error(msg)
                raise ValueError(msg)
        if self.sample_rate_hz <= 0 or self.duration_s <= 0:
            msg = "Sample rate and duration must be positive."
            logger.error(msg)
            raise ValueError(msg)
        n = self.duration_s * self.sample_rate_hz
        if abs(n - round(n)) > 1e-9 or round(n) < 1:
            msg = "duration_s x sample_rate_hz = {} is not a positive "\
                "integer.".format(n)
            logger.error(msg)
            raise ValueError(msg)
        if self.noise_sigma_deg < 0:
            msg = "noise_sigma_deg must be non-negative."
            logger.error(msg)
            raise ValueError(msg)
        if self.time_constant_s[0] <= 0:
            msg = "time_constant_s must be positive."
            logger.error(msg)
            raise ValueError(msg)
        if self.seed < 0:
            msg = "seed must be an unsigned integer."
            logger.error(msg)
            raise ValueError(msg)

    @property
    def n_samples(self) -> int:
        return int(round(self.duration_s * self.sample_rate_hz))

    @property
    def timestamps(self) -> np.ndarray:
        return np.arange(self.n_samples, dtype=np.float64) / \
            self.sample_rate_hz

    @classmethod
    def from_dict(cls, params: Mapping) -> "GeneratorConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(params) - known
        if unknown:
            msg = "Unknown generator parameters: {}.".format(sorted(unknown))
            logger.error(msg)
            raise ValueError(msg)
        values = {k: tuple(v) if isinstance(v, list) else v
                  for k, v in params.items()}
        return cls(**values)

    def to_dict(self) -> Dict:
        return {k: list(v) if isinstance(v, tuple) else v
                for k, v in asdict(self).items()}

# --------------------------------------------------------------------------- #
#                             CLOSED-FORM WAVEFORMS                           #
# --------------------------------------------------------------------------- #


def _ramp(t: np.ndarray, onset: float, tau: float) -> np.ndarray:
    tp = np.maximum(t - onset, 0.0)
    return np.where(t >= onset, tp - tau * (1.0 - np.exp(-tp / tau)), 0.0)


def generation_trip_waveform(t: np.ndarray, theta0: float, amplitude: float,
                             tau: float, onset: float) -> np.ndarray:
    """Angle integral of a first-order frequency dip."""
    return theta0 - amplitude * _ramp(np.asarray(t, dtype=np.float64),
                                      onset, tau)


def load_shedding_waveform(t: np.ndarray, theta0: float, amplitude: float,
                           tau: float, onset: float) -> np.ndarray:
    return theta0 + amplitude * _ramp(np.asarray(t, dtype=np.float64),
                                      onset, tau)


def oscillation_waveform(t: np.ndarray, theta0: float, amplitude: float,
                         freq_hz: float, damping: float, phase: float,
                         onset: float) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    omega = 2.0 * np.pi * freq_hz
    tp = np.maximum(t - onset, 0.0)
    swing = amplitude * np.exp(-damping * omega * tp) * \
        np.sin(omega * tp + phase)
    return np.where(t >= onset, theta0 + swing, theta0)

# --------------------------------------------------------------------------- #
#                               GENERATORS                                    #
# --------------------------------------------------------------------------- #


def event_rng(seed: int, index: int) -> np.random.Generator:
    """PCG64 stream of one event, keyed on (seed, event index)."""
    return np.random.Generator(np.random.PCG64([int(seed), int(index)]))


def _draw(rng: np.random.Generator, bounds: Range) -> float:
    low, high = bounds
    return float(rng.uniform(low, high)) if high > low else float(low)


def _noise(cfg: GeneratorConfig, rng: np.random.Generator) -> np.ndarray:
    if cfg.noise_sigma_deg == 0:
        return np.zeros(cfg.n_samples)
    return rng.normal(0.0, cfg.noise_sigma_deg, size=cfg.n_samples)


def _ramp_event(cfg: GeneratorConfig, rng: np.random.Generator,
                label: Label, event_id: Optional[str]) -> TimeSeriesEvent:
    theta0 = _draw(rng, cfg.theta0_range_deg)
    amplitude = _draw(rng, cfg.step_amplitude_deg)
    tau = _draw(rng, cfg.time_constant_s)
    waveform = generation_trip_waveform if label is Label.GENERATION_TRIP \
        else load_shedding_waveform
    samples = waveform(cfg.timestamps, theta0, amplitude, tau,
                       cfg.event_onset_s) + _noise(cfg, rng)
    return TimeSeriesEvent(event_id=event_id or label.slug, label=label,
                           samples=samples,
                           sample_rate_hz=cfg.sample_rate_hz)


def gen_generation_trip(cfg: GeneratorConfig, rng: np.random.Generator,
                        event_id: Optional[str] = None) -> TimeSeriesEvent:
    return _ramp_event(cfg, rng, Label.GENERATION_TRIP, event_id)


def gen_load_shedding(cfg: GeneratorConfig, rng: np.random.Generator,
                      event_id: Optional[str] = None) -> TimeSeriesEvent:
    return _ramp_event(cfg, rng, Label.LOAD_SHEDDING, event_id)


def gen_oscillation(cfg: GeneratorConfig, rng: np.random.Generator,
                    event_id: Optional[str] = None) -> TimeSeriesEvent:
    theta0 = _draw(rng, cfg.theta0_range_deg)
    amplitude = _draw(rng, cfg.osc_amplitude_deg)
    freq = _draw(rng, cfg.osc_freq_hz)
    damping = _draw(rng, cfg.osc_damping)
    phase = _draw(rng, cfg.osc_phase_range_rad)
    samples = oscillation_waveform(cfg.timestamps, theta0, amplitude, freq,
                                   damping, phase, cfg.event_onset_s) + \
        _noise(cfg, rng)
    return TimeSeriesEvent(event_id=event_id or Label.OSCILLATION.slug,
                           label=Label.OSCILLATION, samples=samples,
                           sample_rate_hz=cfg.sample_rate_hz)


GENERATORS = {
    Label.GENERATION_TRIP: gen_generation_trip,
    Label.LOAD_SHEDDING: gen_load_shedding,
    Label.OSCILLATION: gen_oscillation,
}

DEFAULT_COUNTS = {
    Label.GENERATION_TRIP: 142,
    Label.LOAD_SHEDDING: 145,
    Label.OSCILLATION: 87,
}


def build_dataset(cfg: GeneratorConfig,
                  counts: Optional[Mapping[Label, int]] = None) -> Dataset:
    """Generates sum(counts) events, class by class in label order."""
    counts = dict(DEFAULT_COUNTS if counts is None else counts)
    for label, count in counts.items():
        if int(count) < 1:
            msg = "Count for {} must be positive, got {}.".format(
                label.slug, count)
            logger.error(msg)
            raise ValueError(msg)

    events = []
    index = 0
    for label in Label:
        for k in range(int(counts.get(label, 0))):
            event_id = "{}_{:04d}".format(label.slug, k)
            events.append(GENERATORS[label](cfg, event_rng(cfg.seed, index),
                                            event_id=event_id))
            index += 1

    dataset = Dataset.from_events(events)
    logger.info("Generated {} synthetic events: {}".format(
        len(dataset), dataset.summary().to_dict()))
    return dataset

# --------------------------------------------------------------------------- #
#                          SEPARABILITY ORACLE                                #
# --------------------------------------------------------------------------- #


def nearest_neighbor_loo_accuracy(features: np.ndarray,
                                  labels: np.ndarray) -> float:
    """Leave-one-out accuracy of a brute-force 1-nearest-neighbour classifier.

    Ties in distance resolve to the lowest sample index.
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    sq = np.sum(features ** 2, axis=1)
    dist = sq[:, None] + sq[None, :] - 2.0 * features @ features.T
    np.fill_diagonal(dist, np.inf)
    nearest = np.argmin(dist, axis=1)
    return float(np.mean(labels[nearest] == labels))
