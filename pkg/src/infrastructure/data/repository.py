#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\infrastructure\data\repository.py                           #
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
"""Repository of disturbance events stored as CSV files plus a JSON manifest.

Each event is one CSV with header ``timestamp_s,angle_deg`` and one row per
sample, values written with 17 significant digits so a save/load round trip
is exact. The manifest is a JSON array of
``{"path", "label", "event_id"}`` objects; paths are relative to the
manifest's directory. Extra keys (``sample_rate_hz``, ``image``) are
preserved by the writers and ignored by the reader.
"""
from abc import ABC, abstractmethod
import json
import logging
from pathlib import Path
from typing import Dict, List

import numpy as np
import pandas as pd

from src.domain.datasets import Dataset, Label, TimeSeriesEvent
from src.utils.files import PathLike, check_file, ensure_directory, \
    relative_posix
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
CSV_COLUMNS = ['timestamp_s', 'angle_deg']
MANIFEST_KEYS = ('path', 'label', 'event_id')
MANIFEST_NAME = 'manifest.json'
FLOAT_FORMAT = '%.17g'
DEFAULT_SAMPLE_RATE_HZ = 10.0
# --------------------------------------------------------------------------- #
#                                MANIFEST                                     #
# --------------------------------------------------------------------------- #


def read_manifest(manifest_path: PathLike) -> List[Dict]:
    path = check_file(manifest_path, logger, 'Manifest')
    try:
        entries = json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as error:
        msg = "Manifest {} is not valid JSON: {}".format(path, error)
        logger.error(msg)
        raise ValueError(msg) from error
    if not isinstance(entries, list):
        msg = "Manifest {} must hold a JSON array.".format(path)
        logger.error(msg)
        raise ValueError(msg)
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict) or \
                any(key not in entry for key in MANIFEST_KEYS):
            msg = "Manifest {} entry {} must have keys {}.".format(
                path, k, list(MANIFEST_KEYS))
            logger.error(msg)
            raise ValueError(msg)
    return entries


def write_manifest(entries: List[Dict], manifest_path: PathLike) -> Path:
    path = Path(manifest_path)
    ensure_directory(path.parent)
    path.write_text(json.dumps(entries, indent=2) + '\n', encoding='utf-8')
    return path

# --------------------------------------------------------------------------- #
#                                EVENT CSV                                    #
# --------------------------------------------------------------------------- #


def read_event_csv(csv_path: PathLike) -> np.ndarray:
    """Angle column of an event CSV, in file order.

    Blank lines are ignored. A non-numeric or non-finite cell raises
    ValueError naming the file and its 1-based line number (the header is
    line 1).
    """
    path = check_file(csv_path, logger, 'Event file')
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False,
                            skip_blank_lines=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as error:
        msg = "{}: malformed CSV: {}".format(path, error)
        logger.error(msg)
        raise ValueError(msg) from error
    if list(frame.columns) != CSV_COLUMNS:
        msg = "{}: expected header {}, found {}.".format(
            path, ','.join(CSV_COLUMNS), ','.join(map(str, frame.columns)))
        logger.error(msg)
        raise ValueError(msg)
    # Row r of the frame is line r + 2 of the file.
    frame = frame.fillna('')
    frame = frame[~(frame == '').all(axis=1)]
    angles = np.empty(len(frame))
    for k, (row, cell) in enumerate(frame['angle_deg'].items()):
        try:
            angles[k] = float(cell)
        except ValueError:
            angles[k] = np.nan
        if not np.isfinite(angles[k]):
            msg = "{}, line {}: malformed angle value '{}'.".format(
                path, row + 2, cell)
            logger.error(msg)
            raise ValueError(msg)
    return angles


def write_event_csv(event: TimeSeriesEvent, csv_path: PathLike) -> Path:
    path = Path(csv_path)
    frame = pd.DataFrame({'timestamp_s': event.timestamps,
                          'angle_deg': event.samples}, columns=CSV_COLUMNS)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path

# --------------------------------------------------------------------------- #
#                               REPOSITORY                                    #
# --------------------------------------------------------------------------- #


class Repository(ABC):
    """Loads and stores whole datasets."""

    @abstractmethod
    def load(self) -> Dataset:
        pass

    @abstractmethod
    def save(self, data: Dataset) -> Path:
        pass


class EventRepository(Repository):
    """Events under one directory, indexed by its manifest.

    Arguments:
        directory (str): Directory holding the manifest and event CSVs.
        manifest_name (str): File name of the manifest.
    """

    def __init__(self, directory: PathLike,
                 manifest_name: str = MANIFEST_NAME) -> None:
        self._directory = Path(directory)
        self._manifest_name = manifest_name

    @property
    def directory(self) -> Path:
        return self._directory

    @property
    def manifest_path(self) -> Path:
        return self._directory / self._manifest_name

    @classmethod
    def from_manifest(cls, manifest_path: PathLike) -> "EventRepository":
        path = Path(manifest_path)
        return cls(path.parent, path.name)

    def load(self) -> Dataset:
        entries = read_manifest(self.manifest_path)
        events, seen = [], set()
        for entry in entries:
            event_id = str(entry['event_id'])
            if event_id in seen:
                msg = "Manifest {} lists event_id '{}' more than once."\
                    .format(self.manifest_path, event_id)
                logger.error(msg)
                raise ValueError(msg)
            seen.add(event_id)
            label = Label.from_slug(entry['label'])
            samples = read_event_csv(self._directory / entry['path'])
            events.append(TimeSeriesEvent(
                event_id=event_id, label=label, samples=samples,
                sample_rate_hz=float(entry.get('sample_rate_hz',
                                               DEFAULT_SAMPLE_RATE_HZ))))
        data = Dataset.from_events(events)
        logger.info("Loaded {} events from {}.".format(len(data),
                                                       self.manifest_path))
        return data

    def save(self, data: Dataset) -> Path:
        events_dir = ensure_directory(self._directory / 'events')
        entries = []
        for event in data:
            csv_path = write_event_csv(event,
                                       events_dir / (event.event_id + '.csv'))
            entries.append({
                'path': relative_posix(csv_path, self._directory),
                'label': event.label.slug,
                'event_id': event.event_id,
                'sample_rate_hz': event.sample_rate_hz,
            })
        path = write_manifest(entries, self.manifest_path)
        logger.info("Saved {} events to {}.".format(len(data), path))
        return path


def load_events(manifest_path: PathLike) -> Dataset:
    return EventRepository.from_manifest(manifest_path).load()


def save_events(data: Dataset, directory: PathLike) -> Path:
    """Writes events/<event_id>.csv files and manifest.json. Returns the
    manifest path."""
    return EventRepository(directory).save(data)
