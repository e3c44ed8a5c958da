#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\visualization\visualize.py                                  #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Monday, September 6th 2021, 9:12:40 am                           #
# Modified : Friday, September 17th 2021, 10:44:08 am                         #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
"""PNG figures: GAF images, the accuracy comparison chart and learning
curves. Uses the non-interactive Agg backend."""
import logging
from pathlib import Path
from typing import Mapping

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from src.domain.features.gaf import GafImage  # noqa: E402
from src.utils.files import PathLike, ensure_directory  # noqa: E402
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


def _save(fig, path: PathLike) -> Path:
    path = Path(path)
    ensure_directory(path.parent)
    fig.savefig(path, dpi=100, bbox_inches='tight')
    plt.close(fig)
    logger.debug("Saved figure {}.".format(path))
    return path


def render_gaf(image: GafImage, path: PathLike, title: str = None) -> Path:
    """GAF matrix as a colour image with entries mapped over [-1, 1]."""
    fig, ax = plt.subplots(figsize=(4, 4))
    shown = ax.imshow(image.values, cmap='rainbow', vmin=-1.0, vmax=1.0,
                      origin='upper')
    ax.set_title(title or image.source_event_id)
    ax.set_xticks([])
    ax.set_yticks([])
    fig.colorbar(shown, ax=ax, fraction=0.046, pad=0.04)
    return _save(fig, path)


def plot_accuracy(table: pd.DataFrame, path: PathLike) -> Path:
    """Grouped bars of test accuracy, one group per model and one bar per
    training fraction. ``table`` is indexed by model with one column per
    fraction."""
    fig, ax = plt.subplots(figsize=(8, 4))
    n_models, n_fractions = table.shape
    width = 0.8 / max(n_fractions, 1)
    x = np.arange(n_models)
    for k, column in enumerate(table.columns):
        ax.bar(x + (k - (n_fractions - 1) / 2) * width,
               table[column].values * 100.0, width, label=str(column))
    ax.set_xticks(x)
    ax.set_xticklabels([str(m).upper() for m in table.index])
    ax.set_ylabel('Test accuracy (%)')
    ax.set_ylim(0, 100)
    ax.legend(title='Training fraction', loc='lower right')
    return _save(fig, path)


def plot_learning_curves(traces: Mapping[str, Mapping], path: PathLike
                         ) -> Path:
    """Train accuracy per epoch, one line per model."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, trace in traces.items():
        accuracy = trace.get('accuracy', [])
        if accuracy:
            ax.plot(np.arange(1, len(accuracy) + 1), accuracy, label=name)
    ax.axhline(0.95, color='grey', linestyle='--', linewidth=0.8)
    ax.set_xlabel('Epoch')
    ax.set_ylabel('Train accuracy')
    ax.legend()
    return _save(fig, path)
