#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\application\experiment.py                                   #
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
"""Holdout experiment over training fractions and model kinds.

For every fraction the dataset is split once with the experiment seed; each
selected model is then trained on the train part and scored on both parts.
Cells are reported in (model name, fraction) order, so the report JSON is
byte-identical for identical configurations apart from wall_time_s.
"""
from dataclasses import dataclass, field, asdict, replace
import json
import logging
from pathlib import Path
import time
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from src.application.extract import load_or_generate
from src.application.statistics import AccuracyStatistics, \
    EpochEfficiencyStatistics
from src.application.transform import export_dataset_images
from src.domain.datasets import Dataset, Label, stratified_split
from src.domain.features.build_features import FeatureMode
from src.domain.models.predict_model import evaluate
from src.domain.models.train_model import MODEL_KINDS, NETWORK_KINDS, \
    check_kind, hyperparameters_for, train_model
from src.domain.synthesis import DEFAULT_COUNTS, GeneratorConfig
from src.infrastructure.data.config import HyperparameterConfig, \
    parse_fraction, parse_list
from src.utils.files import PathLike, ensure_directory
from src.visualization.visualize import plot_learning_curves
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
REPORT_NAME = 'report.json'
ACCURACY_NAME = 'accuracy.csv'
EFFICIENCY_NAME = 'epoch_efficiency.csv'
TIMING_FIELDS = ('wall_time_s',)
# --------------------------------------------------------------------------- #
#                           EXPERIMENT CONFIG                                 #
# --------------------------------------------------------------------------- #


class ExperimentCellError(RuntimeError):
    """A failure inside one (model, fraction) cell."""

    def __init__(self, model: str, fraction: float,
                 error: Exception) -> None:
        self.model = model
        self.fraction = fraction
        super(ExperimentCellError, self).__init__(
            "cell (model={}, fraction={:.4f}) failed: {}: {}".format(
                model, fraction, type(error).__name__, error))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment run depends on.

    The dataset comes from ``manifest`` when set, otherwise from the
    generator with ``synthesis`` and ``counts``. ``seed`` drives the splits,
    network initialization and per-epoch shuffling.
    """

    manifest: Optional[str] = None
    synthesis: GeneratorConfig = field(default_factory=GeneratorConfig)
    counts: Dict[str, int] = field(default_factory=lambda: {
        label.slug: count for label, count in DEFAULT_COUNTS.items()})
    window_s: float = 30.0
    image_size: int = 64
    models: Tuple[str, ...] = MODEL_KINDS
    fractions: Tuple[float, ...] = (2 / 3, 3 / 4, 4 / 5)
    hyperparameters: Dict[str, Any] = field(default_factory=dict)
    baseline_features: str = 'raw'
    seed: int = 0
    out_dir: Optional[str] = None
    export_images: bool = False
    plot: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, 'models', tuple(self.models))
        object.__setattr__(self, 'fractions',
                           tuple(float(f) for f in self.fractions))
        hyperparameters = {kind: hyperparameters_for(kind)
                           for kind in MODEL_KINDS}
        hyperparameters.update(self.hyperparameters)
        object.__setattr__(self, 'hyperparameters', hyperparameters)
        self._validate()

    def _validate(self) -> None:
        if not self.models:
            msg = "At least one model must be selected."
            logger.error(msg)
            raise ValueError(msg)
        for model in self.models:
            check_kind(model)
        if len(set(self.models)) != len(self.models):
            msg = "Models listed more than once: {}.".format(self.models)
            logger.error(msg)
            raise ValueError(msg)
        if not self.fractions or \
                any(not 0 < f < 1 for f in self.fractions):
            msg = "Fractions must be non-empty and lie in (0, 1), got {}."\
                .format(self.fractions)
            logger.error(msg)
            raise ValueError(msg)
        if self.seed < 0 or self.window_s <= 0 or self.image_size < 1:
            msg = "seed must be >= 0, window_s > 0 and image_size >= 1."
            logger.error(msg)
            raise ValueError(msg)
        FeatureMode(self.baseline_features)
        for label in self.counts:
            Label.from_slug(label)

    def to_dict(self) -> Dict:
        """JSON-ready echo of the configuration."""
        return {
            'manifest': self.manifest,
            'synthesis': self.synthesis.to_dict(),
            'counts': dict(self.counts),
            'window_s': self.window_s,
            'image_size': self.image_size,
            'models': list(self.models),
            'fractions': list(self.fractions),
            'hyperparameters': {kind: cfg.to_dict() for kind, cfg
                                in sorted(self.hyperparameters.items())},
            'baseline_features': self.baseline_features,
            'seed': self.seed,
            'export_images': self.export_images,
            'plot': self.plot,
        }

    def with_seed(self, seed: int, out_dir: str = None) -> "ExperimentConfig":
        return replace(self, seed=int(seed),
                       out_dir=out_dir if out_dir is not None
                       else self.out_dir)


def _apply(values: Dict, layer: Mapping, source: str) -> Dict:
    """Merges one configuration layer (file JSON or CLI) into values."""
    unknown = set(layer) - set(ExperimentConfig.__dataclass_fields__)
    if unknown:
        msg = "Unknown {} keys: {}.".format(source, sorted(unknown))
        logger.error(msg)
        raise ValueError(msg)
    values = dict(values)
    for key, value in layer.items():
        if value is None and key not in ('manifest', 'out_dir'):
            continue
        if key == 'synthesis':
            merged = values['synthesis'].to_dict()
            merged.update(value)
            values['synthesis'] = GeneratorConfig.from_dict(merged)
        elif key == 'hyperparameters':
            hyperparameters = dict(values['hyperparameters'])
            for kind, overrides in value.items():
                hyperparameters[kind] = hyperparameters_for(
                    kind, overrides, base=hyperparameters.get(kind))
            values['hyperparameters'] = hyperparameters
        elif key == 'counts':
            counts = dict(values['counts'])
            counts.update(value)
            values['counts'] = counts
        elif key == 'fractions':
            values['fractions'] = tuple(parse_fraction(f)
                                        for f in parse_list(value))
        elif key == 'models':
            values['models'] = parse_list(value)
        else:
            values[key] = value
    return values


def build_config(file_values: Mapping = None, cli_values: Mapping = None,
                 defaults: HyperparameterConfig = None) -> ExperimentConfig:
    """ExperimentConfig from the .cfg defaults, then the JSON config file,
    then command-line values, each layer overriding the previous one."""
    defaults = defaults or HyperparameterConfig()
    experiment = defaults.experiment()
    values = {
        'synthesis': defaults.synthesis(),
        'hyperparameters': defaults.models(),
        'window_s': float(experiment['window_s']),
        'image_size': int(experiment['image_size']),
        'models': tuple(experiment['models']),
        'fractions': tuple(experiment['fractions']),
        'seed': int(experiment['seed']),
        'baseline_features': experiment['baseline_features'],
        'counts': {label.slug: count
                   for label, count in DEFAULT_COUNTS.items()},
    }
    values = _apply(values, file_values or {}, 'config file')
    values = _apply(values, cli_values or {}, 'command-line')
    return ExperimentConfig(**values)


def read_config_file(path: PathLike) -> Dict:
    path = Path(path)
    if not path.is_file():
        msg = "Experiment config {} not found.".format(path)
        logger.error(msg)
        raise FileNotFoundError(msg)
    try:
        values = json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as error:
        msg = "Experiment config {} is not valid JSON: {}".format(path, error)
        logger.error(msg)
        raise ValueError(msg) from error
    if not isinstance(values, dict):
        msg = "Experiment config {} must hold a JSON object.".format(path)
        logger.error(msg)
        raise ValueError(msg)
    return values

# --------------------------------------------------------------------------- #
#                              EXPERIMENT REPORT                              #
# --------------------------------------------------------------------------- #


@dataclass
class CellResult:
    model: str
    fraction: float
    seed: int
    n_train: int
    n_test: int
    train_accuracy: float
    test_accuracy: float
    confusion: List[List[int]]
    epochs_run: int
    epochs_to_95pct_train: Optional[int]
    trace: Dict[str, List[float]]
    wall_time_s: float

    def to_dict(self, include_timing: bool = True) -> Dict:
        values = asdict(self)
        if not include_timing:
            for name in TIMING_FIELDS:
                values.pop(name)
        return values


@dataclass
class ExperimentReport:
    """Per-cell metrics of one run plus the configuration echo."""

    config: Dict
    seed: int
    cells: List[CellResult] = field(default_factory=list)

    def cell(self, model: str, fraction: float) -> CellResult:
        for c in self.cells:
            if c.model == model and abs(c.fraction - fraction) < 1e-12:
                return c
        msg = "No cell for model {} at fraction {}.".format(model, fraction)
        logger.error(msg)
        raise KeyError(msg)

    def to_dict(self, include_timing: bool = True) -> Dict:
        return {'config': self.config, 'seed': self.seed,
                'cells': [c.to_dict(include_timing) for c in self.cells]}

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True,
                          indent=2) + '\n'

    def save(self, path: PathLike) -> Path:
        path = Path(path)
        ensure_directory(path.parent)
        path.write_text(self.to_json(), encoding='utf-8')
        return path

    @classmethod
    def load(cls, path: PathLike) -> "ExperimentReport":
        values = json.loads(Path(path).read_text(encoding='utf-8'))
        return cls(config=values['config'], seed=values['seed'],
                   cells=[CellResult(**c) for c in values['cells']])

# --------------------------------------------------------------------------- #
#                                 RUNNER                                      #
# --------------------------------------------------------------------------- #


def run_cell(cfg: ExperimentConfig, model: str, fraction: float,
             data: Dataset) -> CellResult:
    start = time.perf_counter()
    split = stratified_split(data, fraction, cfg.seed)
    classifier, trace = train_model(
        split.train, model, cfg.hyperparameters[model], seed=cfg.seed,
        window_s=cfg.window_s, image_size=cfg.image_size,
        feature_mode=FeatureMode(cfg.baseline_features))
    train_eval = evaluate(classifier, split.train)
    test_eval = evaluate(classifier, split.test)
    result = CellResult(
        model=model, fraction=fraction, seed=cfg.seed,
        n_train=len(split.train), n_test=len(split.test),
        train_accuracy=train_eval.accuracy,
        test_accuracy=test_eval.accuracy,
        confusion=test_eval.confusion.tolist(),
        epochs_run=len(trace),
        epochs_to_95pct_train=trace.epochs_to(0.95)
        if model in NETWORK_KINDS else None,
        trace=trace.to_dict(),
        wall_time_s=time.perf_counter() - start)
    logger.info("{} @ {:.4f}: train {:.4f}, test {:.4f} ({} test events, "
                "{:.1f} s)".format(model, fraction, result.train_accuracy,
                                   result.test_accuracy, result.n_test,
                                   result.wall_time_s))
    return result


def run_experiment(cfg: ExperimentConfig,
                   data: Dataset = None) -> ExperimentReport:
    """Runs every (model, fraction) cell and writes outputs to cfg.out_dir
    when it is set."""
    if data is None:
        data = load_or_generate(cfg.manifest, cfg.synthesis, cfg.counts)
    cells = []
    for fraction in cfg.fractions:
        for model in cfg.models:
            try:
                cells.append(run_cell(cfg, model, fraction, data))
            except Exception as error:
                cell_error = ExperimentCellError(model, fraction, error)
                logger.error(str(cell_error))
                raise cell_error from error
    cells.sort(key=lambda c: (c.model, c.fraction))
    report = ExperimentReport(config=cfg.to_dict(), seed=cfg.seed,
                              cells=cells)
    if cfg.out_dir is not None:
        write_outputs(report, cfg, data)
    return report


def write_outputs(report: ExperimentReport, cfg: ExperimentConfig,
                  data: Dataset) -> Path:
    out = ensure_directory(cfg.out_dir)
    path = report.save(out / REPORT_NAME)
    statistics = AccuracyStatistics(report)
    statistics.save(out / ACCURACY_NAME)
    if cfg.plot:
        statistics.plot(out / 'accuracy.png')
        plot_learning_curves(
            {"{} @ {:.3f}".format(c.model, c.fraction): c.trace
             for c in report.cells if c.model in NETWORK_KINDS},
            out / 'learning_curves.png')
    if cfg.export_images:
        export_dataset_images(data, out / 'images', cfg.window_s,
                              cfg.image_size)
    logger.info("Wrote experiment report to {}.".format(path))
    return path


def run_seeds(cfg: ExperimentConfig,
              seeds: Sequence[int]) -> List[ExperimentReport]:
    """One experiment per seed; with several seeds each run writes to
    ``<out_dir>/seed_<seed>`` and the epoch-efficiency table goes to
    ``<out_dir>``."""
    seeds = list(seeds)
    if len(seeds) <= 1:
        return [run_experiment(cfg.with_seed(seeds[0]) if seeds else cfg)]
    data = load_or_generate(cfg.manifest, cfg.synthesis, cfg.counts)
    reports = []
    for seed in seeds:
        out_dir = None if cfg.out_dir is None else \
            str(Path(cfg.out_dir) / 'seed_{}'.format(seed))
        reports.append(run_experiment(cfg.with_seed(seed, out_dir), data))
    if cfg.out_dir is not None:
        EpochEfficiencyStatistics(reports).save(
            Path(cfg.out_dir) / EFFICIENCY_NAME)
    return reports
