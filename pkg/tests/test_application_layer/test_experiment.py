#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \tests\test_application_layer\test_experiment.py                 #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Wednesday, September 15th 2021, 6:02:39 pm                       #
# Modified : Tuesday, September 21st 2021, 9:58:21 am                         #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
import json
import logging

import numpy as np
import pandas as pd
import pytest

from src.application.experiment import ACCURACY_NAME, EFFICIENCY_NAME, \
    REPORT_NAME, ExperimentCellError, ExperimentConfig, ExperimentReport, \
    build_config, read_config_file, run_experiment, run_seeds
from src.domain.models.baselines import DtConfig
from src.domain.synthesis import GeneratorConfig
from src.infrastructure.data.config import HyperparameterConfig
from tests.test_utils.debugging import announce
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #
SMALL_RNN = {'rnn': {'epochs': 2, 'hidden_size': 4, 'batch_size': 4}}
# --------------------------------------------------------------------------- #


@pytest.fixture(scope='function')
def defaults(tmp_path):
    """Built-in defaults, independent of the shipped configuration file."""
    return HyperparameterConfig(tmp_path / 'absent.cfg')


@pytest.mark.experiment
class ExperimentConfigTests:

    @announce
    def test_defaults(self, defaults):
        cfg = build_config(defaults=defaults)
        assert cfg.models == ('cnn', 'rnn', 'lstm', 'dt', 'svm')
        assert cfg.fractions == (2 / 3, 3 / 4, 4 / 5)
        assert cfg.counts == {'generation_trip': 142, 'load_shedding': 145,
                              'oscillation': 87}
        assert cfg.hyperparameters['dt'] == DtConfig()
        assert cfg.out_dir is None

    @announce
    def test_layering(self, defaults):
        file_values = {'seed': 3, 'fractions': '1/2', 'window_s': 20,
                       'hyperparameters': {'dt': {'max_depth': 4}},
                       'synthesis': {'noise_sigma_deg': 0.1}}
        cfg = build_config(file_values, {'seed': 5, 'window_s': None},
                           defaults)
        assert cfg.seed == 5
        assert cfg.window_s == 20
        assert cfg.fractions == (0.5,)
        assert cfg.hyperparameters['dt'].max_depth == 4
        assert cfg.synthesis.noise_sigma_deg == 0.1
        assert cfg.synthesis.sample_rate_hz == 10.0

    @announce
    def test_rejects_bad_values(self, defaults):
        with pytest.raises(ValueError):
            build_config({'folds': 3}, defaults=defaults)
        with pytest.raises(ValueError):
            build_config({'hyperparameters': {'dt': {'splitter': 'best'}}},
                         defaults=defaults)
        with pytest.raises(ValueError):
            build_config(cli_values={'models': 'dt,gru'}, defaults=defaults)
        with pytest.raises(ValueError):
            build_config(cli_values={'models': 'dt,dt'}, defaults=defaults)
        with pytest.raises(ValueError):
            build_config(cli_values={'fractions': '1'}, defaults=defaults)
        with pytest.raises(ValueError):
            build_config({'counts': {'islanding': 3}}, defaults=defaults)
        with pytest.raises(ValueError):
            ExperimentConfig(baseline_features='fft')

    @announce
    def test_read_config_file(self, tmp_path):
        path = tmp_path / 'experiment.json'
        with pytest.raises(FileNotFoundError):
            read_config_file(path)
        path.write_text('[1, 2]', encoding='utf-8')
        with pytest.raises(ValueError):
            read_config_file(path)
        path.write_text('{"seed": 4', encoding='utf-8')
        with pytest.raises(ValueError):
            read_config_file(path)
        path.write_text(json.dumps({'seed': 4}), encoding='utf-8')
        assert read_config_file(path) == {'seed': 4}

    @announce
    def test_echo_excludes_output_directory(self, defaults):
        cfg = build_config(cli_values={'out_dir': 'a'}, defaults=defaults)
        assert cfg.to_dict() == cfg.with_seed(cfg.seed, 'b').to_dict()
        assert 'out_dir' not in cfg.to_dict()


@pytest.mark.experiment
class RunExperimentTests:

    @announce
    def test_single_cell(self, small_dataset, defaults):
        cfg = build_config(cli_values={'models': 'dt', 'fractions': '1/2'},
                           defaults=defaults)
        report = run_experiment(cfg, small_dataset)
        assert len(report.cells) == 1
        cell = report.cell('dt', 0.5)
        assert (cell.n_train, cell.n_test) == (6, 6)
        assert cell.epochs_run == 0
        assert cell.epochs_to_95pct_train is None

    @announce
    def test_report_consistency(self, small_dataset, defaults):
        cfg = build_config(cli_values={
            'models': 'rnn,dt,svm', 'fractions': '1/2, 3/4',
            'image_size': 16, 'hyperparameters': SMALL_RNN},
            defaults=defaults)
        report = run_experiment(cfg, small_dataset)
        assert [(c.model, c.fraction) for c in report.cells] == [
            ('dt', 0.5), ('dt', 0.75), ('rnn', 0.5), ('rnn', 0.75),
            ('svm', 0.5), ('svm', 0.75)]
        for cell in report.cells:
            confusion = np.array(cell.confusion)
            assert cell.n_train + cell.n_test == len(small_dataset)
            assert confusion.sum() == cell.n_test
            assert cell.test_accuracy == pytest.approx(
                np.trace(confusion) / cell.n_test)
        rnn = report.cell('rnn', 0.75)
        assert rnn.epochs_run == 2
        assert len(rnn.trace['accuracy']) == 2
        assert rnn.train_accuracy == rnn.trace['accuracy'][-1]

    @announce
    def test_deterministic(self, small_dataset, defaults):
        cfg = build_config(cli_values={
            'models': 'rnn,dt', 'fractions': '1/2', 'image_size': 16,
            'hyperparameters': SMALL_RNN}, defaults=defaults)
        first = run_experiment(cfg, small_dataset)
        second = run_experiment(cfg, small_dataset)
        assert first.to_json(include_timing=False) == \
            second.to_json(include_timing=False)
        assert 'wall_time_s' not in first.to_json(include_timing=False)

    @announce
    def test_outputs(self, manifest, defaults, tmp_path):
        cfg = build_config(cli_values={
            'models': 'dt', 'fractions': '1/2', 'manifest': str(manifest),
            'image_size': 8, 'out_dir': str(tmp_path), 'export_images': True,
            'plot': True}, defaults=defaults)
        report = run_experiment(cfg)
        loaded = ExperimentReport.load(tmp_path / REPORT_NAME)
        assert loaded.to_dict() == report.to_dict()
        frame = pd.read_csv(tmp_path / ACCURACY_NAME, index_col=0)
        assert frame.loc['dt', '1/2'] == pytest.approx(
            report.cells[0].test_accuracy)
        assert (tmp_path / 'accuracy.png').is_file()
        assert len(list((tmp_path / 'images').glob('*.pgm'))) == 12

    @announce
    def test_cell_error(self, small_dataset, defaults):
        cfg = build_config(cli_values={'models': 'cnn', 'fractions': '1/2',
                                       'image_size': 8}, defaults=defaults)
        with pytest.raises(ExperimentCellError) as info:
            run_experiment(cfg, small_dataset)
        assert info.value.model == 'cnn'
        assert 'fraction=0.5000' in str(info.value)
        assert 'ValueError' in str(info.value)

    @announce
    def test_generated_data(self, defaults):
        cfg = build_config(cli_values={
            'models': 'dt', 'fractions': '1/2',
            'counts': {'generation_trip': 3, 'load_shedding': 3,
                       'oscillation': 3},
            'synthesis': {'seed': 2}}, defaults=defaults)
        report = run_experiment(cfg)
        assert report.config['synthesis'] == \
            GeneratorConfig(seed=2).to_dict()
        assert report.cells[0].n_train + report.cells[0].n_test == 9


@pytest.mark.experiment
class RunSeedsTests:

    @announce
    def test_efficiency_table(self, manifest, defaults, tmp_path):
        cfg = build_config(cli_values={
            'models': 'dt,rnn', 'fractions': '1/2', 'image_size': 16,
            'manifest': str(manifest), 'out_dir': str(tmp_path),
            'hyperparameters': SMALL_RNN}, defaults=defaults)
        reports = run_seeds(cfg, [0, 1])
        assert [r.seed for r in reports] == [0, 1]
        for seed in (0, 1):
            assert (tmp_path / 'seed_{}'.format(seed) / REPORT_NAME).is_file()
        table = pd.read_csv(tmp_path / EFFICIENCY_NAME, index_col=[0, 1])
        assert list(table.columns) == ['rnn', 'lstm']
        assert len(table) == 3

    @announce
    def test_single_seed(self, manifest, defaults, tmp_path):
        cfg = build_config(cli_values={
            'models': 'dt', 'fractions': '1/2', 'manifest': str(manifest),
            'out_dir': str(tmp_path)}, defaults=defaults)
        reports = run_seeds(cfg, [7])
        assert reports[0].seed == 7
        assert (tmp_path / REPORT_NAME).is_file()
        assert not (tmp_path / EFFICIENCY_NAME).exists()
