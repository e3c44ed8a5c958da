#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\models\networks.py                                   #
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
"""Neural classifiers over GAF images: a LeNet-style CNN, a simple RNN and an
LSTM. The recurrent models read image rows as time steps and classify from
the final hidden state.

All networks take a batch of square images shaped (N, S, S), or a single
(S, S) image, and return logits over the three disturbance classes.
"""
from abc import ABC, abstractmethod
from collections import OrderedDict
import logging
from typing import Dict, List, Mapping, Tuple, Union

import numpy as np

from ..datasets import Label, N_CLASSES
from ..features.gaf import GafImage
from .layers import Conv2D, Dense, Flatten, Layer, MaxPool2x2, Parameter, \
    Sequential, activation_layer, check_finite, glorot_uniform, sigmoid, tanh
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
CONV1_CHANNELS = 32
CONV2_CHANNELS = 16
KERNEL_SIZE = 5
FC_UNITS = (120, 84)
FORGET_BIAS = 1.0
LSTM_GATES = ('f', 'i', 'o', 's')
ImageLike = Union[np.ndarray, GafImage]
# --------------------------------------------------------------------------- #
#                              OUTPUT ENCODING                                #
# --------------------------------------------------------------------------- #


def one_hot(label: Union[Label, int], k: int = N_CLASSES) -> np.ndarray:
    """Unit basis vector of the label's class index."""
    index = label.value if isinstance(label, Label) else label
    if isinstance(index, bool) or not isinstance(index, (int, np.integer)) \
            or not 0 <= index < k:
        msg = "Invalid label {!r} for {} classes.".format(label, k)
        logger.error(msg)
        raise ValueError(msg)
    vector = np.zeros(k)
    vector[int(index)] = 1.0
    return vector


def predict(logits: np.ndarray) -> Union[int, np.ndarray]:
    """Argmax over the last axis; ties go to the lowest class index."""
    logits = np.asarray(logits, dtype=np.float64)
    classes = np.argmax(logits, axis=-1)
    return int(classes) if logits.ndim == 1 else classes


def init_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))

# --------------------------------------------------------------------------- #
#                                NETWORK                                      #
# --------------------------------------------------------------------------- #


class Network(ABC):
    """Base class of the image classifiers.

    Arguments:
        image_size (int): Side S of the square input images.
        seed (int): Seed of the PCG64 stream used for initialization.
    """

    kind = None

    def __init__(self, image_size: int, seed: int = 0) -> None:
        if int(image_size) < 1:
            msg = "Image size must be positive, got {}.".format(image_size)
            logger.error(msg)
            raise ValueError(msg)
        self._image_size = int(image_size)
        self._seed = int(seed)

    @property
    def image_size(self) -> int:
        return self._image_size

    @abstractmethod
    def parameters(self) -> List[Parameter]:
        pass

    @abstractmethod
    def hyperparameters(self) -> Dict:
        """Architecture settings needed to rebuild the network."""
        pass

    @abstractmethod
    def _forward(self, images: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def backward(self, grad_logits: np.ndarray) -> None:
        """Accumulates parameter gradients of the last forward batch."""
        pass

    def _as_batch(self, images: ImageLike) -> Tuple[np.ndarray, bool]:
        if isinstance(images, GafImage):
            images = images.values
        x = np.asarray(images, dtype=np.float64)
        single = x.ndim == 2
        if single:
            x = x[None]
        s = self._image_size
        if x.ndim != 3 or x.shape[1:] != (s, s):
            msg = "{} expects {}x{} images, got shape {}.".format(
                self.kind, s, s, np.shape(images))
            logger.error(msg)
            raise ValueError(msg)
        return x, single

    def forward(self, images: ImageLike) -> np.ndarray:
        x, single = self._as_batch(images)
        logits = check_finite(self._forward(x), self.kind + ' forward')
        return logits[0] if single else logits

    def predict(self, images: ImageLike) -> Union[int, np.ndarray]:
        return predict(self.forward(images))

    def zero_grad(self) -> None:
        for p in self.parameters():
            p.zero_grad()

    def state_dict(self) -> "OrderedDict[str, np.ndarray]":
        return OrderedDict((p.name, p.value.copy())
                           for p in self.parameters())

    def load_state_dict(self, arrays: Mapping[str, np.ndarray]) -> None:
        params = self.parameters()
        expected = [p.name for p in params]
        if list(arrays) != expected:
            msg = "{} parameters {} do not match stored names {}.".format(
                self.kind, expected, list(arrays))
            logger.error(msg)
            raise ValueError(msg)
        for p in params:
            value = np.asarray(arrays[p.name], dtype=np.float64)
            if value.shape != p.shape:
                msg = "Parameter {} has shape {}, stored array has {}."\
                    .format(p.name, p.shape, value.shape)
                logger.error(msg)
                raise ValueError(msg)
            p.value = value.copy()
            p.zero_grad()

# --------------------------------------------------------------------------- #
#                                  CNN                                        #
# --------------------------------------------------------------------------- #


class LeNet(Network):
    """conv5x5(32) -> act -> pool -> conv5x5(16) -> act -> pool -> 120 -> 84
    -> 3, with ReLU hidden activations by default or tanh for the classic
    variant."""

    kind = 'cnn'

    def __init__(self, image_size: int = 64, activation: str = 'relu',
                 seed: int = 0) -> None:
        super(LeNet, self).__init__(image_size, seed)
        self._activation = activation
        k = KERNEL_SIZE
        side = ((image_size - k + 1) // 2 - k + 1) // 2
        if image_size - k + 1 < 2 or side < 1:
            msg = "Image size {} is too small for the CNN.".format(image_size)
            logger.error(msg)
            raise ValueError(msg)
        self._flatten_size = side * side * CONV2_CHANNELS
        rng = init_rng(seed)
        fc1, fc2 = FC_UNITS
        self._net = Sequential([
            Conv2D('conv1', 1, CONV1_CHANNELS, k, rng),
            activation_layer(activation, 'act1'),
            MaxPool2x2('pool1'),
            Conv2D('conv2', CONV1_CHANNELS, CONV2_CHANNELS, k, rng),
            activation_layer(activation, 'act2'),
            MaxPool2x2('pool2'),
            Flatten('flatten'),
            Dense('fc1', self._flatten_size, fc1, rng),
            activation_layer(activation, 'act3'),
            Dense('fc2', fc1, fc2, rng),
            activation_layer(activation, 'act4'),
            Dense('out', fc2, N_CLASSES, rng),
        ])

    @property
    def flatten_size(self) -> int:
        return self._flatten_size

    @property
    def layers(self) -> List[Layer]:
        return self._net.layers

    def parameters(self) -> List[Parameter]:
        return self._net.parameters()

    def hyperparameters(self) -> Dict:
        return {'activation': self._activation}

    def _forward(self, images: np.ndarray) -> np.ndarray:
        return self._net.forward(images[..., None])

    def backward(self, grad_logits: np.ndarray) -> None:
        self._net.backward(np.atleast_2d(grad_logits))


def lenet_forward(image: ImageLike, network: LeNet) -> np.ndarray:
    """Logits of one image."""
    return network.forward(image.values if isinstance(image, GafImage)
                           else np.asarray(image))

# --------------------------------------------------------------------------- #
#                             RECURRENT CELLS                                 #
# --------------------------------------------------------------------------- #


def _check_cell(x_t: np.ndarray, h_prev: np.ndarray, W: np.ndarray,
                U: np.ndarray) -> None:
    if W.shape[0] != U.shape[0] or U.shape[0] != U.shape[1] or \
            np.shape(x_t)[-1] != W.shape[1] or \
            np.shape(h_prev)[-1] != U.shape[0]:
        msg = "Cell shape mismatch: x {}, h {}, W {}, U {}.".format(
            np.shape(x_t), np.shape(h_prev), W.shape, U.shape)
        logger.error(msg)
        raise ValueError(msg)


def rnn_cell(x_t: np.ndarray, h_prev: np.ndarray,
             params: Mapping[str, np.ndarray]) -> np.ndarray:
    """h_t = tanh(W x_t + U h_prev + b). Rows of x_t may be a batch."""
    W, U, b = params['W'], params['U'], params['b']
    _check_cell(x_t, h_prev, W, U)
    return tanh(x_t @ W.T + h_prev @ U.T + b)


def _lstm_gates(x_t: np.ndarray, h_prev: np.ndarray,
                params: Mapping[str, np.ndarray]) -> Dict[str, np.ndarray]:
    _check_cell(x_t, h_prev, params['W_f'], params['U_f'])
    gates = {}
    for gate in LSTM_GATES:
        a = x_t @ params['W_' + gate].T + h_prev @ params['U_' + gate].T + \
            params['b_' + gate]
        gates[gate] = tanh(a) if gate == 's' else sigmoid(a)
    return gates


def lstm_cell(x_t: np.ndarray, h_prev: np.ndarray, s_prev: np.ndarray,
              params: Mapping[str, np.ndarray]
              ) -> Tuple[np.ndarray, np.ndarray]:
    """One LSTM step with elementwise gating. Returns (h_t, s_t).

    f, i, o = sigmoid(W_k x_t + U_k h_prev + b_k)
    s_t = f * s_prev + i * tanh(W_s x_t + U_s h_prev + b_s)
    h_t = o * tanh(s_t)
    """
    if np.shape(s_prev) != np.shape(h_prev):
        msg = "Cell state shape {} differs from hidden shape {}.".format(
            np.shape(s_prev), np.shape(h_prev))
        logger.error(msg)
        raise ValueError(msg)
    g = _lstm_gates(x_t, h_prev, params)
    s_t = g['f'] * s_prev + g['i'] * g['s']
    return g['o'] * tanh(s_t), s_t

# --------------------------------------------------------------------------- #
#                           RECURRENT NETWORKS                                #
# --------------------------------------------------------------------------- #


class RecurrentNetwork(Network):
    """Many-to-one recurrence over image rows with a dense readout."""

    def __init__(self, image_size: int, hidden_size: int,
                 seed: int = 0) -> None:
        super(RecurrentNetwork, self).__init__(image_size, seed)
        if isinstance(hidden_size, bool) or \
                not isinstance(hidden_size, (int, np.integer)) or \
                hidden_size < 1:
            msg = "Hidden size must be positive, got {}.".format(hidden_size)
            logger.error(msg)
            raise ValueError(msg)
        self._hidden_size = int(hidden_size)
        self._cache = None
        rng = init_rng(seed)
        self._params = OrderedDict()
        self._build(rng)
        self._readout = Dense('readout', self._hidden_size, N_CLASSES, rng)

    @abstractmethod
    def _build(self, rng: np.random.Generator) -> None:
        pass

    def _add_triple(self, rng: np.random.Generator, suffix: str,
                    bias: float = 0.0) -> None:
        m, h = self._image_size, self._hidden_size
        self._params['W' + suffix] = Parameter(
            'W' + suffix, glorot_uniform(rng, (h, m), m, h))
        self._params['U' + suffix] = Parameter(
            'U' + suffix, glorot_uniform(rng, (h, h), h, h))
        self._params['b' + suffix] = Parameter('b' + suffix,
                                               np.full(h, bias))

    @property
    def hidden_size(self) -> int:
        return self._hidden_size

    @property
    def arrays(self) -> Dict[str, np.ndarray]:
        """Current cell parameter values keyed by name."""
        return {name: p.value for name, p in self._params.items()}

    def parameters(self) -> List[Parameter]:
        return list(self._params.values()) + self._readout.parameters()

    def hyperparameters(self) -> Dict:
        return {'hidden_size': self._hidden_size}

    def _cached(self):
        if self._cache is None:
            msg = "{}: backward called before forward.".format(self.kind)
            logger.error(msg)
            raise RuntimeError(msg)
        return self._cache


class SimpleRNN(RecurrentNetwork):

    kind = 'rnn'

    def __init__(self, image_size: int = 64, hidden_size: int = 128,
                 seed: int = 0) -> None:
        super(SimpleRNN, self).__init__(image_size, hidden_size, seed)

    def _build(self, rng: np.random.Generator) -> None:
        self._add_triple(rng, '')

    def _forward(self, images: np.ndarray) -> np.ndarray:
        params = self.arrays
        h = np.zeros((images.shape[0], self._hidden_size))
        states = [h]
        for t in range(images.shape[1]):
            h = rnn_cell(images[:, t, :], h, params)
            states.append(h)
        self._cache = (images, states)
        return self._readout.forward(h)

    def backward(self, grad_logits: np.ndarray) -> None:
        images, states = self._cached()
        W, U, b = (self._params[k] for k in ('W', 'U', 'b'))
        grad_h = self._readout.backward(np.atleast_2d(grad_logits))
        for t in reversed(range(images.shape[1])):
            h_t, h_prev = states[t + 1], states[t]
            grad_a = grad_h * (1.0 - h_t * h_t)
            W.grad += grad_a.T @ images[:, t, :]
            U.grad += grad_a.T @ h_prev
            b.grad += grad_a.sum(axis=0)
            grad_h = grad_a @ U.value


class LSTMNetwork(RecurrentNetwork):

    kind = 'lstm'

    def __init__(self, image_size: int = 64, hidden_size: int = 64,
                 seed: int = 0) -> None:
        super(LSTMNetwork, self).__init__(image_size, hidden_size, seed)

    def _build(self, rng: np.random.Generator) -> None:
        for gate in LSTM_GATES:
            self._add_triple(rng, '_' + gate,
                             bias=FORGET_BIAS if gate == 'f' else 0.0)

    def _forward(self, images: np.ndarray) -> np.ndarray:
        params = self.arrays
        n = images.shape[0]
        h = np.zeros((n, self._hidden_size))
        s = np.zeros((n, self._hidden_size))
        steps = []
        for t in range(images.shape[1]):
            gates = _lstm_gates(images[:, t, :], h, params)
            s_next = gates['f'] * s + gates['i'] * gates['s']
            tanh_s = tanh(s_next)
            steps.append((h, s, gates, tanh_s))
            h, s = gates['o'] * tanh_s, s_next
        self._cache = (images, steps)
        return self._readout.forward(h)

    def backward(self, grad_logits: np.ndarray) -> None:
        images, steps = self._cached()
        grad_h = self._readout.backward(np.atleast_2d(grad_logits))
        grad_s = np.zeros_like(grad_h)
        for t in reversed(range(images.shape[1])):
            h_prev, s_prev, g, tanh_s = steps[t]
            grad_s = grad_s + grad_h * g['o'] * (1.0 - tanh_s * tanh_s)
            pre = {
                'f': grad_s * s_prev * g['f'] * (1.0 - g['f']),
                'i': grad_s * g['s'] * g['i'] * (1.0 - g['i']),
                'o': grad_h * tanh_s * g['o'] * (1.0 - g['o']),
                's': grad_s * g['i'] * (1.0 - g['s'] * g['s']),
            }
            grad_h = np.zeros_like(grad_h)
            for gate in LSTM_GATES:
                grad_a = pre[gate]
                self._params['W_' + gate].grad += grad_a.T @ images[:, t, :]
                self._params['U_' + gate].grad += grad_a.T @ h_prev
                self._params['b_' + gate].grad += grad_a.sum(axis=0)
                grad_h += grad_a @ self._params['U_' + gate].value
            grad_s = grad_s * g['f']


def sequence_forward(image: ImageLike,
                     network: RecurrentNetwork) -> np.ndarray:
    """Logits of one image read row by row."""
    return network.forward(image.values if isinstance(image, GafImage)
                           else np.asarray(image))

# --------------------------------------------------------------------------- #
#                                FACTORY                                      #
# --------------------------------------------------------------------------- #

NETWORKS = {
    LeNet.kind: LeNet,
    SimpleRNN.kind: SimpleRNN,
    LSTMNetwork.kind: LSTMNetwork,
}


def build_network(kind: str, image_size: int, seed: int = 0,
                  **architecture) -> Network:
    """Instantiates a network by kind ('cnn', 'rnn' or 'lstm')."""
    try:
        cls = NETWORKS[kind]
    except KeyError:
        msg = "Unknown network kind '{}'. Expected one of {}.".format(
            kind, sorted(NETWORKS))
        logger.error(msg)
        raise ValueError(msg)
    return cls(image_size=image_size, seed=seed, **architecture)
