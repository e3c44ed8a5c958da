#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\models\predict_model.py                              #
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
"""Evaluation of trained classifiers and their reconstruction from state."""
from dataclasses import dataclass
import logging
from typing import Dict, Mapping

import numpy as np
from sklearn.metrics import accuracy_score, confusion_matrix

from ..datasets import Dataset, Label, N_CLASSES
from .baselines import DecisionTree, DtConfig, MulticlassSvm, SvmConfig
from .networks import build_network
from .train_model import Classifier, NETWORK_KINDS, NetworkConfig, \
    check_kind
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Evaluation:
    """Accuracy and confusion matrix; confusion[i][j] counts true class i
    predicted as j."""

    accuracy: float
    confusion: np.ndarray

    @property
    def n_samples(self) -> int:
        return int(self.confusion.sum())

    def to_dict(self) -> Dict:
        return {'accuracy': self.accuracy,
                'confusion': self.confusion.tolist()}


def score(labels: np.ndarray, predictions: np.ndarray) -> Evaluation:
    labels = np.asarray(labels)
    if labels.size == 0:
        msg = "Cannot evaluate on an empty set."
        logger.error(msg)
        raise ValueError(msg)
    confusion = confusion_matrix(labels, predictions,
                                 labels=list(range(N_CLASSES)))
    return Evaluation(accuracy=float(accuracy_score(labels, predictions)),
                      confusion=confusion.astype(np.int64))


def evaluate(classifier: Classifier, test: Dataset) -> Evaluation:
    """Predicts every event of the test set and scores the predictions."""
    if len(test) == 0:
        msg = "Test set is empty."
        logger.error(msg)
        raise ValueError(msg)
    return score(test.labels, classifier.predict(test))


def restore_classifier(meta: Mapping,
                       arrays: Mapping[str, np.ndarray]) -> Classifier:
    """Rebuilds a Classifier from its metadata and parameter arrays."""
    kind = check_kind(meta['kind'])
    labels = meta.get('labels', [label.slug for label in Label])
    if list(labels) != [label.slug for label in Label]:
        msg = "Checkpoint label order {} does not match {}.".format(
            labels, [label.slug for label in Label])
        logger.error(msg)
        raise ValueError(msg)
    settings = dict(window_s=meta['window_s'], image_size=meta['image_size'],
                    feature_mode=meta['feature_mode'])
    if kind in NETWORK_KINDS:
        cfg = NetworkConfig(**meta['hyperparameters'])
        network = build_network(kind, int(meta['image_size']),
                                **cfg.architecture(kind))
        network.load_state_dict(arrays)
        return Classifier(kind, network, cfg, **settings)
    if kind == 'dt':
        return Classifier(kind, DecisionTree.from_state(meta['model'], arrays),
                          DtConfig(**meta['hyperparameters']), **settings)
    return Classifier(kind, MulticlassSvm.from_state(meta['model'], arrays),
                      SvmConfig(**meta['hyperparameters']), **settings)
