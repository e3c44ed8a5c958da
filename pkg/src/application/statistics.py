#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\application\statistics.py                                   #
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
"""Tabular views of experiment reports: the (model x fraction) accuracy
table and the epochs-to-95%-train comparison across seeds."""
from abc import ABC, abstractmethod
from fractions import Fraction
import logging
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from src.utils.files import PathLike, ensure_directory
from src.visualization.visualize import plot_accuracy
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
EFFICIENCY_MODELS = ('rnn', 'lstm')
# --------------------------------------------------------------------------- #


def fraction_label(fraction: float) -> str:
    """'2/3' for 0.666..., the nearest fraction with a small denominator."""
    return str(Fraction(fraction).limit_denominator(100))


class Statistics(ABC):
    """Abstraction for classes that compute and store report statistics."""

    @abstractmethod
    def compute(self) -> pd.DataFrame:
        pass

    def save(self, path: PathLike) -> Path:
        path = Path(path)
        ensure_directory(path.parent)
        self.compute().to_csv(path)
        logger.info("Wrote {}.".format(path))
        return path

# --------------------------------------------------------------------------- #
#                              ACCURACY TABLE                                 #
# --------------------------------------------------------------------------- #


class AccuracyStatistics(Statistics):
    """Test accuracy per model (rows) and training fraction (columns).

    Arguments:
        report (ExperimentReport): A completed experiment report.
    """

    def __init__(self, report) -> None:
        self._report = report

    def compute(self) -> pd.DataFrame:
        frame = pd.DataFrame([
            {'model': c.model, 'fraction': fraction_label(c.fraction),
             'order': c.fraction, 'test_accuracy': c.test_accuracy}
            for c in self._report.cells])
        if frame.empty:
            return pd.DataFrame()
        columns = frame.sort_values('order')['fraction'].unique()
        table = frame.pivot(index='model', columns='fraction',
                            values='test_accuracy')
        return table[list(columns)]

    def plot(self, path: PathLike) -> Path:
        return plot_accuracy(self.compute(), path)


def accuracy_table(report) -> pd.DataFrame:
    return AccuracyStatistics(report).compute()

# --------------------------------------------------------------------------- #
#                           EPOCH EFFICIENCY                                  #
# --------------------------------------------------------------------------- #


class EpochEfficiencyStatistics(Statistics):
    """Epochs each recurrent model needed to reach 95% training accuracy,
    one row per (seed, fraction) plus a mean row. Missing values (never
    reached) are NaN and skipped by the mean.

    Arguments:
        reports (list): ExperimentReports, typically one per seed.
        models (tuple): Model kinds to compare.
    """

    def __init__(self, reports: Sequence,
                 models: Sequence[str] = EFFICIENCY_MODELS) -> None:
        self._reports = list(reports)
        self._models = list(models)

    def compute(self) -> pd.DataFrame:
        rows = {}
        for report in self._reports:
            for cell in report.cells:
                if cell.model not in self._models:
                    continue
                key = (str(report.seed), fraction_label(cell.fraction))
                value = cell.epochs_to_95pct_train
                rows.setdefault(key, {})[cell.model] = \
                    np.nan if value is None else float(value)
        if not rows:
            return pd.DataFrame(columns=self._models)
        index = pd.MultiIndex.from_tuples(list(rows),
                                          names=['seed', 'fraction'])
        table = pd.DataFrame(list(rows.values()), index=index,
                             columns=self._models)
        table.loc[('mean', 'all'), :] = table.mean(axis=0, skipna=True)
        return table


def epoch_efficiency_table(reports: Sequence,
                           models: Sequence[str] = EFFICIENCY_MODELS
                           ) -> pd.DataFrame:
    return EpochEfficiencyStatistics(reports, models).compute()
