#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\infrastructure\data\config.py                               #
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
"""Access objects for the INI configuration files.

``config/hyperparameters.cfg`` carries one section per model plus
``[experiment]`` and ``[synthesis]``. Values are Python literals
(numbers, tuples, None); anything else is read as a plain string.
"""
import ast
from configparser import ConfigParser
from fractions import Fraction
import logging
import os
from pathlib import Path
from typing import Dict, List, Tuple

from src.domain.models.train_model import DEFAULT_HYPERPARAMETERS, \
    MODEL_KINDS, hyperparameters_for
from src.domain.synthesis import GeneratorConfig
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
DEFAULT_CONFIG_FILE = Path(__file__).resolve().parents[3] / 'config' / \
    'hyperparameters.cfg'
DEFAULT_FRACTIONS = (Fraction(2, 3), Fraction(3, 4), Fraction(4, 5))
EXPERIMENT_DEFAULTS = {
    'window_s': 30.0,
    'image_size': 64,
    'fractions': tuple(float(f) for f in DEFAULT_FRACTIONS),
    'models': MODEL_KINDS,
    'seed': 0,
    'baseline_features': 'raw',
}
# --------------------------------------------------------------------------- #


def parse_value(raw: str):
    """Python literal when the text is one, else the stripped string."""
    text = raw.strip()
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def parse_fraction(value) -> float:
    """Accepts numbers or 'p/q' strings."""
    try:
        return float(Fraction(str(value).strip()))
    except (ValueError, ZeroDivisionError) as error:
        msg = "Invalid split fraction {!r}.".format(value)
        logger.error(msg)
        raise ValueError(msg) from error


def parse_list(value) -> Tuple:
    if isinstance(value, str):
        return tuple(v.strip() for v in value.split(',') if v.strip())
    if isinstance(value, (list, tuple)):
        return tuple(value)
    return (value,)


class Config:
    """Access object to a configuration file."""

    def __init__(self, filepath: str) -> None:
        self._filepath = filepath

    @property
    def filepath(self) -> str:
        return self._filepath

    @property
    def exists(self) -> bool:
        return os.path.exists(self._filepath)

    def _new_parser(self, read: bool) -> ConfigParser:
        parser = ConfigParser()
        parser.optionxform = str
        if read:
            parser.read(self._filepath)
        return parser

    def _parser(self) -> ConfigParser:
        if not self.exists:
            msg = "Configuration file {} not found.".format(self._filepath)
            logger.error(msg)
            raise FileNotFoundError(msg)
        return self._new_parser(read=True)

    def has_section(self, section: str) -> bool:
        return self.exists and self._parser().has_section(str(section))

    def get_section(self, section: str) -> dict:
        """Returns the section's key-value pairs as raw strings."""
        parser = self._parser()
        if not parser.has_section(section):
            msg = "Section [{}] missing from {}.".format(section,
                                                         self._filepath)
            logger.error(msg)
            raise KeyError(msg)
        return dict(parser.items(section))

    def set_section(self, section: str, params: dict) -> None:
        """Sets or creates a section of parameters in the config file."""
        parser = self._new_parser(read=self.exists)
        parser[str(section)] = {str(k): str(v) for k, v in params.items()}
        Path(self._filepath).parent.mkdir(parents=True, exist_ok=True)
        with open(self._filepath, 'w') as configfile:
            parser.write(configfile)

    @property
    def sections(self) -> List[str]:
        return self._parser().sections()

# --------------------------------------------------------------------------- #
#                         HYPERPARAMETER CONFIG                               #
# --------------------------------------------------------------------------- #


class HyperparameterConfig:
    """Typed defaults for models, experiments and the generator.

    A missing file yields the built-in defaults, which equal the shipped
    hyperparameters.cfg.

    Arguments:
        filepath (str): Path to the INI file.
    """

    def __init__(self, filepath: str = None) -> None:
        self._config = Config(str(filepath or DEFAULT_CONFIG_FILE))
        if not self._config.exists:
            logger.info("No configuration at {}; using built-in defaults."
                        .format(self._config.filepath))

    def _section(self, section: str) -> Dict:
        if not self._config.has_section(section):
            return {}
        return {k: parse_value(v)
                for k, v in self._config.get_section(section).items()}

    def model(self, kind: str):
        """NetworkConfig, DtConfig or SvmConfig for the model kind."""
        return hyperparameters_for(kind, self._section(kind))

    def models(self) -> Dict:
        return {kind: self.model(kind) for kind in MODEL_KINDS}

    def experiment(self) -> Dict:
        values = dict(EXPERIMENT_DEFAULTS)
        section = self._section('experiment')
        unknown = set(section) - set(values)
        if unknown:
            msg = "Unknown [experiment] options: {}.".format(sorted(unknown))
            logger.error(msg)
            raise ValueError(msg)
        values.update(section)
        values['fractions'] = tuple(parse_fraction(f)
                                    for f in parse_list(values['fractions']))
        values['models'] = parse_list(values['models'])
        return values

    def synthesis(self) -> GeneratorConfig:
        return GeneratorConfig.from_dict(self._section('synthesis'))

    def write_defaults(self) -> str:
        """Writes the built-in defaults to the file. Returns its path."""
        for kind in MODEL_KINDS:
            self._config.set_section(
                kind, {k: repr(v) if not isinstance(v, str) else v
                       for k, v in DEFAULT_HYPERPARAMETERS[kind]
                       .to_dict().items()})
        experiment = dict(EXPERIMENT_DEFAULTS)
        experiment['fractions'] = ', '.join(str(f) for f in DEFAULT_FRACTIONS)
        experiment['models'] = ', '.join(MODEL_KINDS)
        self._config.set_section('experiment', experiment)
        self._config.set_section(
            'synthesis', {k: repr(tuple(v)) if isinstance(v, list) else v
                          for k, v in GeneratorConfig().to_dict().items()})
        return self._config.filepath
