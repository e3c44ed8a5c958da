#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \tests\test_infrastructure_layer\test_repository.py              #
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
import json
import logging

import numpy as np
import pytest

from src.domain.datasets import Dataset, Label
from src.infrastructure.data.repository import EventRepository, \
    load_events, read_event_csv, read_manifest, save_events, \
    write_event_csv, write_manifest
from tests.conftest import make_event
from tests.test_utils.debugging import announce
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


def write_csv(path, body: str):
    path.write_text("timestamp_s,angle_deg\n" + body, encoding='utf-8')
    return path


@pytest.mark.repository
class EventCsvTests:

    @announce
    def test_round_trip_is_exact(self, tmp_path):
        samples = np.random.default_rng(0).normal(size=50) * 1e3
        event = make_event('e', Label.LOAD_SHEDDING, samples)
        path = write_event_csv(event, tmp_path / 'e.csv')
        np.testing.assert_array_equal(read_event_csv(path), samples)

    @announce
    def test_malformed_cell_names_line(self, tmp_path):
        path = write_csv(tmp_path / 'bad.csv', "0.0,1.0\n0.1,abc\n0.2,3.0\n")
        with pytest.raises(ValueError, match="line 3"):
            read_event_csv(path)
        path = write_csv(tmp_path / 'first.csv', "0.0,nan\n")
        with pytest.raises(ValueError, match="line 2"):
            read_event_csv(path)

    @announce
    def test_blank_lines_keep_line_numbers(self, tmp_path):
        path = write_csv(tmp_path / 'gaps.csv',
                         "0.0,1.0\n\n0.1,2.0\n\n\n0.2,oops\n")
        with pytest.raises(ValueError, match="line 7"):
            read_event_csv(path)
        path = write_csv(tmp_path / 'clean.csv', "0.0,1.0\n\n0.1,2.0\n")
        np.testing.assert_array_equal(read_event_csv(path), [1.0, 2.0])

    @announce
    def test_bad_header(self, tmp_path):
        path = tmp_path / 'header.csv'
        path.write_text("time,angle\n0.0,1.0\n", encoding='utf-8')
        with pytest.raises(ValueError, match="header"):
            read_event_csv(path)

    @announce
    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_event_csv(tmp_path / 'absent.csv')


@pytest.mark.repository
class ManifestTests:

    @announce
    def test_three_entries(self, tmp_path):
        entries = []
        for k, label in enumerate(Label):
            write_csv(tmp_path / "{}.csv".format(k), "0.0,{}\n0.1,2.0\n"
                      .format(k))
            entries.append({'path': "{}.csv".format(k), 'label': label.slug,
                            'event_id': "event_{}".format(k)})
        manifest = write_manifest(entries, tmp_path / 'manifest.json')
        data = load_events(manifest)
        assert len(data) == 3
        assert [data.class_counts[label] for label in Label] == [1, 1, 1]
        assert data[2].samples[0] == 2.0
        assert data[0].sample_rate_hz == 10.0

    @announce
    def test_duplicate_event_id(self, tmp_path):
        write_csv(tmp_path / 'a.csv', "0.0,1.0\n")
        entry = {'path': 'a.csv', 'label': 'oscillation', 'event_id': 'a'}
        manifest = write_manifest([entry, dict(entry)],
                                  tmp_path / 'manifest.json')
        with pytest.raises(ValueError, match="more than once"):
            load_events(manifest)

    @announce
    def test_unknown_label(self, tmp_path):
        write_csv(tmp_path / 'a.csv', "0.0,1.0\n")
        manifest = write_manifest(
            [{'path': 'a.csv', 'label': 'islanding', 'event_id': 'a'}],
            tmp_path / 'manifest.json')
        with pytest.raises(ValueError, match="Unknown label"):
            load_events(manifest)

    @announce
    def test_missing_event_file(self, tmp_path):
        manifest = write_manifest(
            [{'path': 'gone.csv', 'label': 'oscillation', 'event_id': 'g'}],
            tmp_path / 'manifest.json')
        with pytest.raises(FileNotFoundError):
            load_events(manifest)

    @announce
    def test_malformed_manifest(self, tmp_path):
        path = tmp_path / 'manifest.json'
        with pytest.raises(FileNotFoundError):
            read_manifest(path)
        path.write_text("{not json", encoding='utf-8')
        with pytest.raises(ValueError):
            read_manifest(path)
        path.write_text(json.dumps({'path': 'a.csv'}), encoding='utf-8')
        with pytest.raises(ValueError):
            read_manifest(path)
        path.write_text(json.dumps([{'path': 'a.csv'}]), encoding='utf-8')
        with pytest.raises(ValueError, match="entry 0"):
            read_manifest(path)


@pytest.mark.repository
class EventRepositoryTests:

    @announce
    def test_save_and_load(self, small_dataset, tmp_path):
        manifest = save_events(small_dataset, tmp_path)
        assert manifest == tmp_path / 'manifest.json'
        entries = read_manifest(manifest)
        assert entries[0]['path'] == \
            'events/{}.csv'.format(small_dataset[0].event_id)
        loaded = EventRepository(tmp_path).load()
        assert loaded.event_ids == small_dataset.event_ids
        np.testing.assert_array_equal(loaded.labels, small_dataset.labels)
        for original, restored in zip(small_dataset, loaded):
            np.testing.assert_array_equal(restored.samples, original.samples)
            assert restored.sample_rate_hz == original.sample_rate_hz

    @announce
    def test_empty_dataset(self, tmp_path):
        manifest = save_events(Dataset(), tmp_path)
        assert read_manifest(manifest) == []
        assert len(load_events(manifest)) == 0
