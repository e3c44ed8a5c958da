#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\models\train_model.py                                #
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
"""Training of every model kind on a training Dataset.

Networks run exactly ``epochs`` passes over the training images. Each epoch
draws its shuffle from a PCG64 stream keyed on (seed, epoch), updates per
mini-batch with the configured optimizer, then records the mean loss and the
training accuracy in a TrainingTrace. Baselines fit in one shot and return an
empty trace.
"""
from collections import OrderedDict
from dataclasses import dataclass, field, asdict, replace
import logging
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from ..datasets import Dataset, Label
from ..features.build_features import FeatureMode, feature_matrix, \
    image_tensor
from ..features.gaf import DEFAULT_IMAGE_SIZE, DEFAULT_WINDOW_S
from .baselines import DecisionTree, DtConfig, MulticlassSvm, SvmConfig
from .layers import softmax_xent_loss
from .networks import Network, build_network
from .optimizers import Adam, Optimizer, OptimizerKind, SGDMomentum
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
MODEL_KINDS = ('cnn', 'rnn', 'lstm', 'dt', 'svm')
NETWORK_KINDS = ('cnn', 'rnn', 'lstm')
BASELINE_KINDS = ('dt', 'svm')
EVAL_BATCH_SIZE = 64
# --------------------------------------------------------------------------- #
#                             HYPERPARAMETERS                                 #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class NetworkConfig:
    """Optimization and architecture settings of one neural model."""

    optimizer: str = 'adam'
    learning_rate: float = 0.001
    epochs: int = 30
    batch_size: int = 64
    momentum: float = 0.9
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    hidden_size: Optional[int] = None
    activation: str = 'relu'

    def __post_init__(self) -> None:
        OptimizerKind(self.optimizer)
        if self.epochs < 0 or self.batch_size < 1:
            msg = "epochs must be >= 0 and batch_size >= 1, got {} and {}."\
                .format(self.epochs, self.batch_size)
            logger.error(msg)
            raise ValueError(msg)
        if not self.learning_rate > 0:
            msg = "learning_rate must be positive, got {}.".format(
                self.learning_rate)
            logger.error(msg)
            raise ValueError(msg)

    def architecture(self, kind: str) -> Dict:
        """Network constructor arguments; an unset hidden_size keeps the
        network's own default."""
        if kind == 'cnn':
            return {'activation': self.activation}
        if self.hidden_size is None:
            return {}
        return {'hidden_size': self.hidden_size}

    def to_dict(self) -> Dict:
        return asdict(self)


DEFAULT_HYPERPARAMETERS = {
    'cnn': NetworkConfig(optimizer='sgd_momentum', learning_rate=0.01,
                         momentum=0.9, epochs=30, batch_size=64),
    'rnn': NetworkConfig(optimizer='adam', learning_rate=0.001, epochs=50,
                         batch_size=64, hidden_size=128),
    'lstm': NetworkConfig(optimizer='adam', learning_rate=0.001, epochs=30,
                          batch_size=64, hidden_size=64),
    'dt': DtConfig(),
    'svm': SvmConfig(),
}

Hyperparameters = Union[NetworkConfig, DtConfig, SvmConfig]


def check_kind(kind: str) -> str:
    if kind not in MODEL_KINDS:
        msg = "Unknown model kind '{}'. Expected one of {}.".format(
            kind, list(MODEL_KINDS))
        logger.error(msg)
        raise ValueError(msg)
    return kind


def hyperparameters_for(kind: str, overrides: Mapping = None,
                        base: Hyperparameters = None) -> Hyperparameters:
    """Hyperparameters of a model kind, the defaults unless base is given,
    with overrides applied."""
    check_kind(kind)
    base = base if base is not None else DEFAULT_HYPERPARAMETERS[kind]
    overrides = dict(overrides or {})
    unknown = set(overrides) - set(base.__dataclass_fields__)
    if unknown:
        msg = "Unknown {} hyperparameters: {}.".format(kind, sorted(unknown))
        logger.error(msg)
        raise ValueError(msg)
    return replace(base, **overrides)

# --------------------------------------------------------------------------- #
#                              TRAINING TRACE                                 #
# --------------------------------------------------------------------------- #


@dataclass
class TrainingTrace:
    """Per-epoch mean training loss and training accuracy."""

    loss: List[float] = field(default_factory=list)
    accuracy: List[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.loss)

    def append(self, loss: float, accuracy: float) -> None:
        self.loss.append(float(loss))
        self.accuracy.append(float(accuracy))

    def epochs_to(self, threshold: float = 0.95) -> Optional[int]:
        """First epoch (1-based) whose train accuracy reaches threshold."""
        for epoch, accuracy in enumerate(self.accuracy, start=1):
            if accuracy >= threshold:
                return epoch
        return None

    def to_dict(self) -> Dict:
        return {'loss': list(self.loss), 'accuracy': list(self.accuracy)}

# --------------------------------------------------------------------------- #
#                             NETWORK TRAINING                                #
# --------------------------------------------------------------------------- #


def epoch_rng(seed: int, epoch: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([int(seed), int(epoch)]))


def make_optimizer(network: Network, cfg: NetworkConfig) -> Optimizer:
    if OptimizerKind(cfg.optimizer) is OptimizerKind.SGD_MOMENTUM:
        return SGDMomentum(network.parameters(), cfg.learning_rate,
                           cfg.momentum)
    return Adam(network.parameters(), cfg.learning_rate, cfg.beta1,
                cfg.beta2, cfg.epsilon)


def batched_predict(network: Network, images: np.ndarray,
                    batch_size: int = EVAL_BATCH_SIZE) -> np.ndarray:
    """Class predictions computed in chunks to bound activation memory."""
    if len(images) == 0:
        return np.empty(0, dtype=np.int64)
    return np.concatenate([network.predict(images[i:i + batch_size])
                           for i in range(0, len(images), batch_size)])


def train_network(network: Network, images: np.ndarray, labels: np.ndarray,
                  cfg: NetworkConfig, seed: int = 0) -> TrainingTrace:
    """Mini-batch training in place. Returns the per-epoch trace."""
    n = len(images)
    if n == 0 or len(labels) != n:
        msg = "Training needs a non-empty image set with one label each."
        logger.error(msg)
        raise ValueError(msg)
    optimizer = make_optimizer(network, cfg)
    trace = TrainingTrace()
    for epoch in range(cfg.epochs):
        order = epoch_rng(seed, epoch).permutation(n)
        total = 0.0
        for start in range(0, n, cfg.batch_size):
            batch = order[start:start + cfg.batch_size]
            optimizer.zero_grad()
            try:
                loss, grad = softmax_xent_loss(network.forward(images[batch]),
                                               labels[batch])
            except FloatingPointError as error:
                msg = "{} training diverged at epoch {}: {}".format(
                    network.kind, epoch + 1, error)
                logger.error(msg)
                raise FloatingPointError(msg) from error
            network.backward(grad)
            optimizer.step()
            total += loss * len(batch)
        accuracy = float(np.mean(batched_predict(network, images) == labels))
        trace.append(total / n, accuracy)
        logger.info("{} epoch {}/{}: loss {:.6f}, train accuracy {:.4f}"
                    .format(network.kind, epoch + 1, cfg.epochs, total / n,
                            accuracy))
    return trace

# --------------------------------------------------------------------------- #
#                               CLASSIFIER                                    #
# --------------------------------------------------------------------------- #


class Classifier:
    """A trained model together with the recipe that builds its inputs.

    Networks consume GAF image stacks; baselines consume feature vectors in
    the configured FeatureMode.
    """

    def __init__(self, kind: str, model, hyperparameters: Hyperparameters,
                 window_s: float = DEFAULT_WINDOW_S,
                 image_size: int = DEFAULT_IMAGE_SIZE,
                 feature_mode: FeatureMode = FeatureMode.RAW_SERIES) -> None:
        self._kind = check_kind(kind)
        self._model = model
        self._hyperparameters = hyperparameters
        self._window_s = float(window_s)
        self._image_size = int(image_size)
        self._feature_mode = FeatureMode(feature_mode)

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def model(self):
        return self._model

    @property
    def hyperparameters(self) -> Hyperparameters:
        return self._hyperparameters

    @property
    def window_s(self) -> float:
        return self._window_s

    @property
    def image_size(self) -> int:
        return self._image_size

    @property
    def feature_mode(self) -> FeatureMode:
        return self._feature_mode

    def inputs(self, data: Dataset) -> np.ndarray:
        if self._kind in NETWORK_KINDS:
            return image_tensor(data, self._window_s, self._image_size)[0]
        return feature_matrix(data, self._feature_mode, self._window_s,
                              self._image_size)[0]

    def predict_inputs(self, inputs: np.ndarray) -> np.ndarray:
        if self._kind in NETWORK_KINDS:
            return batched_predict(self._model, inputs)
        return self._model.predict(inputs)

    def predict(self, data: Dataset) -> np.ndarray:
        return self.predict_inputs(self.inputs(data))

    def metadata(self) -> Dict:
        """Everything except the parameter arrays needed to rebuild."""
        return {
            'kind': self._kind,
            'hyperparameters': self._hyperparameters.to_dict(),
            'window_s': self._window_s,
            'image_size': self._image_size,
            'feature_mode': self._feature_mode.value,
            'labels': [label.slug for label in Label],
        }

    def state(self) -> Tuple[Dict, "OrderedDict[str, np.ndarray]"]:
        meta = self.metadata()
        if self._kind in NETWORK_KINDS:
            return meta, self._model.state_dict()
        model_meta, arrays = self._model.state()
        meta['model'] = model_meta
        return meta, arrays

# --------------------------------------------------------------------------- #
#                               TRAIN MODEL                                   #
# --------------------------------------------------------------------------- #


def train_model(train: Dataset, kind: str,
                hyperparameters: Union[Hyperparameters, Mapping] = None,
                seed: int = 0, window_s: float = DEFAULT_WINDOW_S,
                image_size: int = DEFAULT_IMAGE_SIZE,
                feature_mode: FeatureMode = FeatureMode.RAW_SERIES
                ) -> Tuple[Classifier, TrainingTrace]:
    """Fits one model kind on the training set.

    Returns the Classifier and its per-epoch trace (empty for baselines
    and for zero epochs).
    """
    check_kind(kind)
    if len(train) == 0:
        msg = "Training set is empty."
        logger.error(msg)
        raise ValueError(msg)
    if hyperparameters is None or isinstance(hyperparameters, Mapping):
        hyperparameters = hyperparameters_for(kind, hyperparameters)

    classifier_args = dict(window_s=window_s, image_size=image_size,
                           feature_mode=feature_mode)
    if kind in NETWORK_KINDS:
        network = build_network(kind, image_size, seed,
                                **hyperparameters.architecture(kind))
        images, labels = image_tensor(train, window_s, image_size)
        trace = train_network(network, images, labels, hyperparameters, seed)
        return Classifier(kind, network, hyperparameters,
                          **classifier_args), trace

    features, labels = feature_matrix(train, feature_mode, window_s,
                                      image_size)
    model = DecisionTree(hyperparameters) if kind == 'dt' else \
        MulticlassSvm(hyperparameters)
    model.fit(features, labels)
    logger.info("{} fit on {} events ({} features, {} mode).".format(
        kind, len(train), features.shape[1], FeatureMode(feature_mode).value))
    return Classifier(kind, model, hyperparameters,
                      **classifier_args), TrainingTrace()
