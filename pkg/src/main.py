#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\main.py                                                     #
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
"""Command-line entry point: ``gafclassify <command> [options]``.

Commands follow the pipeline order: generate, encode, export-images, train,
evaluate and run-experiment. Any failure ends with a one-line diagnostic on
stderr and exit code 1.
"""
import json
import logging
from pathlib import Path

import click

from src.application.experiment import build_config, read_config_file, \
    run_seeds
from src.application.extract import GenerateEvents, load_or_generate
from src.application.transform import EncodeEvents, ExportImages
from src.domain.datasets import stratified_split
from src.domain.features.build_features import FeatureMode
from src.domain.models.predict_model import evaluate, restore_classifier
from src.domain.models.train_model import MODEL_KINDS, train_model
from src.infrastructure.data.checkpoint import load_checkpoint, \
    save_checkpoint
from src.infrastructure.data.config import HyperparameterConfig
from src.infrastructure.data.repository import load_events
from src.utils.files import ensure_directory
from src.utils.logger import configure_logging
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
CHECKPOINT_NAME = 'model.ckpt'
NETWORKS = ('cnn', 'rnn', 'lstm')
# Each flag overrides one hyperparameter of the model kinds that have it.
HYPERPARAMETER_FLAGS = (
    ('--optimizer', 'optimizer', str, NETWORKS),
    ('--learning-rate', 'learning_rate', float, NETWORKS),
    ('--epochs', 'epochs', int, NETWORKS),
    ('--batch-size', 'batch_size', int, NETWORKS),
    ('--momentum', 'momentum', float, NETWORKS),
    ('--beta1', 'beta1', float, NETWORKS),
    ('--beta2', 'beta2', float, NETWORKS),
    ('--epsilon', 'epsilon', float, NETWORKS),
    ('--hidden-size', 'hidden_size', int, ('rnn', 'lstm')),
    ('--activation', 'activation', str, ('cnn',)),
    ('--criterion', 'criterion', str, ('dt',)),
    ('--max-depth', 'max_depth', int, ('dt',)),
    ('--min-samples-split', 'min_samples_split', int, ('dt',)),
    ('--min-samples-leaf', 'min_samples_leaf', int, ('dt',)),
    ('--svm-c', 'C', float, ('svm',)),
    ('--svm-gamma', 'gamma', float, ('svm',)),
    ('--svm-tolerance', 'tolerance', float, ('svm',)),
    ('--svm-max-passes', 'max_passes', int, ('svm',)),
)
# --------------------------------------------------------------------------- #
#                                 HELPERS                                     #
# --------------------------------------------------------------------------- #


def _option_name(flag: str) -> str:
    return 'hp_' + flag.lstrip('-').replace('-', '_')


def hyperparameter_options(command):
    for flag, _, kind, models in reversed(HYPERPARAMETER_FLAGS):
        command = click.option(
            flag, _option_name(flag), type=kind, default=None,
            help="Override for {}.".format(', '.join(models)))(command)
    return command


def hyperparameter_overrides(values: dict, kinds) -> dict:
    """{kind: {field: value}} for the flags that were given."""
    overrides = {}
    for flag, name, _, models in HYPERPARAMETER_FLAGS:
        value = values.pop(_option_name(flag), None)
        if value is None:
            continue
        for kind in models:
            if kind in kinds:
                overrides.setdefault(kind, {})[name] = value
    return overrides


def _file_values(config: str) -> dict:
    return read_config_file(config) if config else {}


class PipelineGroup(click.Group):
    """Maps uncaught errors of any command to a one-line diagnostic."""

    def invoke(self, ctx):
        try:
            return super(PipelineGroup, self).invoke(ctx)
        except (click.exceptions.Exit, click.exceptions.Abort,
                click.ClickException):
            raise
        except Exception as error:
            logger.debug("Command failed.", exc_info=True)
            click.echo("error: {}: {}".format(
                type(error).__name__, str(error).splitlines()[0]
                if str(error) else ''), err=True)
            ctx.exit(1)

# --------------------------------------------------------------------------- #
#                                 COMMANDS                                    #
# --------------------------------------------------------------------------- #


@click.group(cls=PipelineGroup)
@click.option('--verbose', '-v', is_flag=True, help="Log at DEBUG level.")
@click.option('--hyperparameters', type=click.Path(dir_okay=False),
              default=None, help="INI file with model defaults.")
@click.pass_context
def cli(ctx, verbose, hyperparameters):
    """Power-grid disturbance classification on Gramian angular fields."""
    configure_logging(verbose)
    ctx.obj = HyperparameterConfig(hyperparameters)


@cli.command()
@click.option('--config', type=click.Path(dir_okay=False), default=None)
@click.option('--seed', type=click.IntRange(min=0), default=None,
              help="Generator seed.")
@click.option('--out', required=True, type=click.Path(file_okay=False))
@click.option('--count', 'counts', multiple=True, metavar='LABEL=N',
              help="Events for one label, e.g. oscillation=87.")
@click.pass_obj
def generate(defaults, config, seed, out, counts):
    """Synthetic dataset to CSV files and manifest.json."""
    cli_values = {'counts': dict(_parse_count(c) for c in counts)}
    if seed is not None:
        cli_values['synthesis'] = {'seed': seed}
    cfg = build_config(_file_values(config), cli_values, defaults)
    manifest = GenerateEvents(cfg.synthesis, out, cfg.counts).execute()
    click.echo(str(manifest))


def _parse_count(text: str):
    label, sep, count = text.partition('=')
    if not sep:
        raise click.BadParameter("expected LABEL=N, got {!r}".format(text),
                                 param_hint='--count')
    return label.strip(), int(count)


@cli.command()
@click.option('--manifest', required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option('--out', required=True, type=click.Path(file_okay=False))
@click.option('--window-s', type=float, default=None)
@click.option('--image-size', type=click.IntRange(min=1), default=None)
@click.option('--format', 'image_format', type=click.Choice(['gaf', 'pgm']),
              default='gaf')
@click.pass_obj
def encode(defaults, manifest, out, window_s, image_size, image_format):
    """Manifest events to GAF image files."""
    experiment = defaults.experiment()
    path = EncodeEvents(
        manifest, out,
        window_s=window_s if window_s is not None else experiment['window_s'],
        image_size=image_size if image_size is not None
        else experiment['image_size'],
        image_format=image_format).execute()
    click.echo(str(path))


@cli.command('export-images')
@click.option('--manifest', required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Manifest written by encode.")
@click.option('--out', required=True, type=click.Path(file_okay=False))
@click.option('--png', is_flag=True, help="Also render PNG images.")
def export_images(manifest, out, png):
    """Encoded GAF matrices to PGM (and PNG) images."""
    written = ExportImages(manifest, out, png=png).execute()
    click.echo("{} files written to {}".format(len(written), out))


def _experiment_values(model, manifest, fraction, seed, window_s, image_size,
                       baseline_features, overrides) -> dict:
    values = {'models': [model], 'manifest': manifest,
              'hyperparameters': overrides}
    if fraction is not None:
        values['fractions'] = [fraction]
    for key, value in (('seed', seed), ('window_s', window_s),
                       ('image_size', image_size),
                       ('baseline_features', baseline_features)):
        if value is not None:
            values[key] = value
    return values


@cli.command()
@click.option('--config', type=click.Path(dir_okay=False), default=None)
@click.option('--model', type=click.Choice(MODEL_KINDS), required=True)
@click.option('--manifest', type=click.Path(exists=True, dir_okay=False),
              default=None, help="Events to train on; synthetic if omitted.")
@click.option('--fraction', type=str, default=None,
              help="Train on this stratified share only, e.g. 2/3.")
@click.option('--seed', type=click.IntRange(min=0), default=None)
@click.option('--window-s', type=float, default=None)
@click.option('--image-size', type=click.IntRange(min=1), default=None)
@click.option('--baseline-features',
              type=click.Choice([m.value for m in FeatureMode]), default=None)
@click.option('--out', required=True, type=click.Path(file_okay=False))
@hyperparameter_options
@click.pass_obj
def train(defaults, config, model, manifest, fraction, seed, window_s,
          image_size, baseline_features, out, **hyperparameters):
    """Trains one model and writes its checkpoint."""
    overrides = hyperparameter_overrides(hyperparameters, (model,))
    cfg = build_config(_file_values(config), _experiment_values(
        model, manifest, fraction, seed, window_s, image_size,
        baseline_features, overrides), defaults)
    data = load_or_generate(cfg.manifest, cfg.synthesis, cfg.counts)
    if fraction is not None:
        data = stratified_split(data, cfg.fractions[0], cfg.seed).train
    classifier, trace = train_model(
        data, model, cfg.hyperparameters[model], seed=cfg.seed,
        window_s=cfg.window_s, image_size=cfg.image_size,
        feature_mode=FeatureMode(cfg.baseline_features))
    meta, arrays = classifier.state()
    meta['trace'] = trace.to_dict()
    meta['seed'] = cfg.seed
    path = save_checkpoint(ensure_directory(out) / CHECKPOINT_NAME,
                           model, meta, arrays)
    click.echo(str(path))


@cli.command('evaluate')
@click.option('--checkpoint', required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option('--manifest', required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option('--fraction', type=str, default=None,
              help="Evaluate on the held-out share of this split only.")
@click.option('--seed', type=click.IntRange(min=0), default=None)
@click.option('--out', type=click.Path(file_okay=False), default=None)
@click.pass_obj
def evaluate_command(defaults, checkpoint, manifest, fraction, seed, out):
    """Scores a checkpoint on the events of a manifest."""
    stored = load_checkpoint(checkpoint)
    classifier = restore_classifier(stored.metadata, stored.arrays)
    data = load_events(manifest)
    if fraction is not None:
        cfg = build_config(cli_values={
            'fractions': [fraction],
            'seed': seed if seed is not None
            else stored.metadata.get('seed', 0)}, defaults=defaults)
        data = stratified_split(data, cfg.fractions[0], cfg.seed).test
    result = evaluate(classifier, data)
    values = dict(result.to_dict(), kind=classifier.kind,
                  n_samples=result.n_samples)
    text = json.dumps(values, sort_keys=True, indent=2)
    if out is not None:
        (ensure_directory(out) / 'evaluation.json').write_text(
            text + '\n', encoding='utf-8')
    click.echo(text)


@cli.command('run-experiment')
@click.option('--config', type=click.Path(dir_okay=False), default=None)
@click.option('--manifest', type=click.Path(exists=True, dir_okay=False),
              default=None, help="Events to use; synthetic if omitted.")
@click.option('--models', type=str, default=None,
              help="Comma-separated subset of {}.".format(
                  ', '.join(MODEL_KINDS)))
@click.option('--fractions', type=str, default=None,
              help="Comma-separated training fractions, e.g. 2/3,3/4,4/5.")
@click.option('--seed', type=click.IntRange(min=0), default=None)
@click.option('--seeds', type=str, default=None,
              help="Comma-separated seeds; one run per seed.")
@click.option('--window-s', type=float, default=None)
@click.option('--image-size', type=click.IntRange(min=1), default=None)
@click.option('--baseline-features',
              type=click.Choice([m.value for m in FeatureMode]), default=None)
@click.option('--out', required=True, type=click.Path(file_okay=False))
@click.option('--plot', is_flag=True, help="Write PNG charts.")
@click.option('--export-images', 'export_images_', is_flag=True,
              help="Write a PGM of every event's GAF image.")
@hyperparameter_options
@click.pass_obj
def run_experiment_command(defaults, config, manifest, models, fractions,
                           seed, seeds, window_s, image_size,
                           baseline_features, out, plot, export_images_,
                           **hyperparameters):
    """Trains and scores every model at every training fraction."""
    cli_values = {'manifest': manifest, 'out_dir': out}
    for key, value in (('models', models), ('fractions', fractions),
                       ('seed', seed), ('window_s', window_s),
                       ('image_size', image_size),
                       ('baseline_features', baseline_features)):
        if value is not None:
            cli_values[key] = value
    if plot:
        cli_values['plot'] = True
    if export_images_:
        cli_values['export_images'] = True
    file_values = _file_values(config)
    if manifest is None:
        cli_values.pop('manifest')
    cli_values['hyperparameters'] = hyperparameter_overrides(
        hyperparameters, MODEL_KINDS)
    cfg = build_config(file_values, cli_values, defaults)
    seed_list = [int(s) for s in seeds.split(',') if s.strip()] \
        if seeds else [cfg.seed]
    reports = run_seeds(cfg, seed_list)
    for report in reports:
        for cell in report.cells:
            click.echo("seed {} {:>4} {:.4f}: test accuracy {:.4f}".format(
                report.seed, cell.model, cell.fraction, cell.test_accuracy))
    click.echo(str(Path(out)))


if __name__ == '__main__':
    cli(prog_name='gafclassify')
