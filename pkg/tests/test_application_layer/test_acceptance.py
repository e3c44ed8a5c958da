#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \tests\test_application_layer\test_acceptance.py                 #
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
import logging

import pandas as pd
import pytest

from src.application.experiment import ACCURACY_NAME, EFFICIENCY_NAME, \
    build_config, run_experiment, run_seeds
from tests.test_utils.debugging import announce
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #
MINIMUM_TEST_ACCURACY = {'cnn': 0.95, 'rnn': 0.95, 'lstm': 0.95, 'svm': 0.90,
                         'dt': 0.80}
# --------------------------------------------------------------------------- #


@pytest.mark.acceptance
@pytest.mark.experiment
class FullExperimentTests:

    @announce
    def test_default_run(self, tmp_path):
        report = run_experiment(build_config(cli_values={
            'out_dir': str(tmp_path)}))
        assert len(report.cells) == 15
        for cell in report.cells:
            assert cell.n_train + cell.n_test == 374
            assert cell.test_accuracy >= MINIMUM_TEST_ACCURACY[cell.model], \
                print(cell.model, cell.fraction, cell.test_accuracy)

    @announce
    def test_recurrent_epoch_efficiency(self, tmp_path):
        cfg = build_config(cli_values={'models': 'rnn,lstm',
                                       'out_dir': str(tmp_path)})
        reports = run_seeds(cfg, range(5))
        assert len(reports) == 5
        table = pd.read_csv(tmp_path / EFFICIENCY_NAME, index_col=[0, 1])
        assert list(table.columns) == ['rnn', 'lstm']
        assert len(table) == 5 * 3 + 1
        logger.info("Epochs to 95% train accuracy:\n{}".format(table))


# --------------------------------------------------------------------------- #
REDUCED_VALUES = {
    'counts': {'generation_trip': 8, 'load_shedding': 8, 'oscillation': 8},
    'image_size': 16,
    'hyperparameters': {
        'cnn': {'epochs': 1, 'batch_size': 8},
        'rnn': {'epochs': 3, 'hidden_size': 4, 'batch_size': 8},
        'lstm': {'epochs': 3, 'hidden_size': 4, 'batch_size': 8}}}
# --------------------------------------------------------------------------- #


@pytest.mark.experiment
class ReducedExperimentTests:
    """Same grids as the full runs on 24 small events."""

    @announce
    def test_all_models_all_fractions(self, tmp_path):
        cfg = build_config(cli_values=dict(REDUCED_VALUES,
                                           out_dir=str(tmp_path)))
        report = run_experiment(cfg)
        assert [(c.model, c.fraction) for c in report.cells] == [
            (model, fraction) for model in sorted(MINIMUM_TEST_ACCURACY)
            for fraction in (2 / 3, 3 / 4, 4 / 5)]
        for cell in report.cells:
            assert cell.n_train + cell.n_test == 24
            assert sum(map(sum, cell.confusion)) == cell.n_test
            assert 0.0 <= cell.test_accuracy <= 1.0
        table = pd.read_csv(tmp_path / ACCURACY_NAME, index_col=0)
        assert table.shape == (5, 3)

    @announce
    def test_recurrent_epoch_efficiency(self, tmp_path):
        cfg = build_config(cli_values=dict(REDUCED_VALUES,
                                           models='rnn,lstm',
                                           out_dir=str(tmp_path)))
        run_seeds(cfg, range(5))
        table = pd.read_csv(tmp_path / EFFICIENCY_NAME, index_col=[0, 1])
        assert list(table.columns) == ['rnn', 'lstm']
        assert len(table) == 5 * 3 + 1
