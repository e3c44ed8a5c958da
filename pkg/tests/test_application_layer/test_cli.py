#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \tests\test_application_layer\test_cli.py                        #
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
import json
import logging

from click.testing import CliRunner
import pytest

from src.application.experiment import REPORT_NAME, ExperimentReport
from src.infrastructure.data.checkpoint import load_checkpoint
from src.infrastructure.data.repository import read_manifest
from src.main import cli
from tests.test_utils.debugging import announce
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #
COUNTS = ['--count', 'generation_trip=3', '--count', 'load_shedding=3',
          '--count', 'oscillation=3']
# --------------------------------------------------------------------------- #


def stderr_runner() -> CliRunner:
    # click 8.2 always separates stderr and dropped mix_stderr.
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()


def diagnostics(result) -> list:
    return [line for line in result.stderr.splitlines()
            if line.startswith('error: ')]


@pytest.fixture(scope='function')
def invoke(tmp_path):
    """Runs the CLI with the built-in defaults, stderr kept apart."""
    runner = stderr_runner()
    absent = str(tmp_path / 'absent.cfg')

    def run(*args):
        return runner.invoke(cli, ['--hyperparameters', absent] +
                             [str(a) for a in args])
    return run


@pytest.mark.cli
class PipelineCommandTests:

    @announce
    def test_generate_encode_export(self, invoke, tmp_path):
        result = invoke('generate', '--out', tmp_path / 'events', '--seed', 4,
                        *COUNTS)
        assert result.exit_code == 0, print(result.output)
        manifest = tmp_path / 'events' / 'manifest.json'
        assert len(read_manifest(manifest)) == 9

        result = invoke('encode', '--manifest', manifest, '--out',
                        tmp_path / 'encoded', '--image-size', 16)
        assert result.exit_code == 0, print(result.output)
        encoded = tmp_path / 'encoded' / 'manifest.json'
        assert all('image' in e for e in read_manifest(encoded))

        result = invoke('export-images', '--manifest', encoded, '--out',
                        tmp_path / 'pgm')
        assert result.exit_code == 0, print(result.output)
        assert len(list((tmp_path / 'pgm').glob('*.pgm'))) == 9

    @announce
    def test_train_and_evaluate(self, invoke, manifest, tmp_path):
        result = invoke('train', '--model', 'dt', '--manifest', manifest,
                        '--fraction', '1/2', '--seed', 2, '--max-depth', 3,
                        '--out', tmp_path / 'model')
        assert result.exit_code == 0, print(result.output)
        checkpoint = load_checkpoint(tmp_path / 'model' / 'model.ckpt')
        assert checkpoint.kind == 'dt'
        assert checkpoint.metadata['hyperparameters']['max_depth'] == 3
        assert checkpoint.metadata['seed'] == 2

        result = invoke('evaluate', '--checkpoint',
                        tmp_path / 'model' / 'model.ckpt', '--manifest',
                        manifest, '--fraction', '1/2', '--out',
                        tmp_path / 'eval')
        assert result.exit_code == 0, print(result.output)
        values = json.loads((tmp_path / 'eval' / 'evaluation.json')
                            .read_text(encoding='utf-8'))
        assert values['kind'] == 'dt'
        assert values['n_samples'] == 6
        assert sum(map(sum, values['confusion'])) == 6
        assert 0.0 <= values['accuracy'] <= 1.0

    @announce
    def test_run_experiment(self, invoke, manifest, tmp_path):
        result = invoke('run-experiment', '--models', 'dt,svm',
                        '--fractions', '1/2', '--manifest', manifest,
                        '--svm-gamma', 0.5, '--out', tmp_path)
        assert result.exit_code == 0, print(result.output)
        assert 'test accuracy' in result.output
        report = ExperimentReport.load(tmp_path / REPORT_NAME)
        assert [c.model for c in report.cells] == ['dt', 'svm']
        assert report.config['hyperparameters']['svm']['gamma'] == 0.5


@pytest.mark.cli
class ErrorTests:

    @announce
    def test_failure_exits_with_one(self, invoke, tmp_path):
        result = invoke('generate', '--out', tmp_path, '--count',
                        'islanding=3')
        assert result.exit_code == 1
        errors = diagnostics(result)
        assert len(errors) == 1
        assert errors[0].startswith('error: ValueError: ')

    @announce
    def test_training_failure(self, invoke, manifest, tmp_path):
        result = invoke('train', '--model', 'cnn', '--manifest', manifest,
                        '--image-size', 8, '--out', tmp_path)
        assert result.exit_code == 1
        assert len(diagnostics(result)) == 1

    @announce
    def test_usage_errors(self, invoke, tmp_path):
        assert invoke('generate', '--out', tmp_path, '--count',
                      'oscillation').exit_code == 2
        assert invoke('train', '--model', 'gru', '--out',
                      tmp_path).exit_code == 2
