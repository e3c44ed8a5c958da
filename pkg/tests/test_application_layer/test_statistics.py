#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \tests\test_application_layer\test_statistics.py                 #
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
import logging

import numpy as np
import pandas as pd
import pytest

from src.application.experiment import CellResult, ExperimentReport
from src.application.statistics import AccuracyStatistics, \
    accuracy_table, epoch_efficiency_table, fraction_label
from tests.test_utils.debugging import announce
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


def cell(model, fraction, accuracy=0.5, epochs=None, seed=0):
    return CellResult(model=model, fraction=fraction, seed=seed, n_train=10,
                      n_test=5, train_accuracy=1.0, test_accuracy=accuracy,
                      confusion=[[2, 0, 0], [0, 1, 0], [0, 1, 1]],
                      epochs_run=0, epochs_to_95pct_train=epochs,
                      trace={'loss': [], 'accuracy': []}, wall_time_s=0.1)


@pytest.mark.statistics
class FractionLabelTests:

    @announce
    def test_labels(self):
        assert fraction_label(2 / 3) == '2/3'
        assert fraction_label(0.75) == '3/4'
        assert fraction_label(0.8) == '4/5'
        assert fraction_label(0.5) == '1/2'


@pytest.mark.statistics
class AccuracyTableTests:

    @announce
    def test_pivot(self):
        report = ExperimentReport(config={}, seed=0, cells=[
            cell('dt', 0.8, 0.6), cell('dt', 2 / 3, 0.5),
            cell('cnn', 2 / 3, 0.9)])
        table = accuracy_table(report)
        assert list(table.columns) == ['2/3', '4/5']
        assert list(table.index) == ['cnn', 'dt']
        assert table.loc['dt', '4/5'] == 0.6
        assert table.loc['cnn', '2/3'] == 0.9
        assert np.isnan(table.loc['cnn', '4/5'])

    @announce
    def test_empty_report(self):
        assert accuracy_table(ExperimentReport(config={}, seed=0)).empty

    @announce
    def test_save(self, tmp_path):
        report = ExperimentReport(config={}, seed=0,
                                  cells=[cell('svm', 0.75, 0.25)])
        path = AccuracyStatistics(report).save(tmp_path / 'acc.csv')
        frame = pd.read_csv(path, index_col=0)
        assert frame.loc['svm', '3/4'] == 0.25


@pytest.mark.statistics
class EpochEfficiencyTests:

    @announce
    def test_mean_skips_missing(self):
        reports = [
            ExperimentReport(config={}, seed=0, cells=[
                cell('rnn', 0.75, epochs=10), cell('lstm', 0.75, epochs=4),
                cell('dt', 0.75)]),
            ExperimentReport(config={}, seed=1, cells=[
                cell('rnn', 0.75, epochs=None, seed=1),
                cell('lstm', 0.75, epochs=6, seed=1)]),
        ]
        table = epoch_efficiency_table(reports)
        assert list(table.columns) == ['rnn', 'lstm']
        assert len(table) == 3
        assert table.loc[('0', '3/4'), 'rnn'] == 10
        assert np.isnan(table.loc[('1', '3/4'), 'rnn'])
        assert table.loc[('mean', 'all'), 'rnn'] == 10
        assert table.loc[('mean', 'all'), 'lstm'] == 5

    @announce
    def test_no_recurrent_cells(self):
        report = ExperimentReport(config={}, seed=0, cells=[cell('dt', 0.5)])
        table = epoch_efficiency_table([report])
        assert table.empty
        assert list(table.columns) == ['rnn', 'lstm']
