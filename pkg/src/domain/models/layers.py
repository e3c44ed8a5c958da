#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\models\layers.py                                     #
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
"""Dense float64 layers with cached forward and analytic backward passes.

Tensors are numpy float64 arrays laid out batch-first and channels-last:
images are (N, H, W, C), vectors are (N, n). Each layer keeps the cache of
its last forward call; calling backward without one raises RuntimeError.
Parameter gradients accumulate across backward calls until zero_grad.
"""
from abc import ABC, abstractmethod
import logging
from typing import List, Optional, Tuple

import numpy as np
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #
#                                PARAMETER                                    #
# --------------------------------------------------------------------------- #


class Parameter:
    """A named trainable array and its accumulated gradient."""

    def __init__(self, name: str, value: np.ndarray) -> None:
        self._name = name
        self.value = np.array(value, dtype=np.float64)
        self.grad = np.zeros_like(self.value)

    @property
    def name(self) -> str:
        return self._name

    @property
    def shape(self) -> tuple:
        return self.value.shape

    def zero_grad(self) -> None:
        self.grad = np.zeros_like(self.value)

    def __repr__(self) -> str:
        return "Parameter({}, shape={})".format(self._name, self.shape)


def glorot_uniform(rng: np.random.Generator, shape: tuple, fan_in: int,
                   fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def check_finite(array: np.ndarray, where: str) -> np.ndarray:
    if not np.all(np.isfinite(array)):
        msg = "Non-finite values produced by {}.".format(where)
        logger.error(msg)
        raise FloatingPointError(msg)
    return array


def _shape_error(msg: str) -> ValueError:
    logger.error(msg)
    return ValueError(msg)

# --------------------------------------------------------------------------- #
#                           FUNCTIONAL OPERATIONS                             #
# --------------------------------------------------------------------------- #


def conv2d_forward(inputs: np.ndarray, kernels: np.ndarray,
                   bias: np.ndarray) -> np.ndarray:
    """Valid, stride-1 cross-correlation.

    out[n, y, x, d] = bias[d]
        + sum_{i, j, c} in[n, y + i, x + j, c] K[i, j, c, d]

    Accepts a single (H, W, C) image or an (N, H, W, C) batch.
    """
    single = inputs.ndim == 3
    x = inputs[None] if single else inputs
    if x.ndim != 4 or kernels.ndim != 4:
        raise _shape_error("conv2d expects (N,H,W,C) inputs and (k,k,C,D) "
                           "kernels, got {} and {}.".format(inputs.shape,
                                                            kernels.shape))
    n, h, w, c = x.shape
    kh, kw, kc, d = kernels.shape
    if kc != c or bias.shape != (d,) or kh > h or kw > w:
        raise _shape_error("conv2d shape mismatch: input {}, kernels {}, "
                           "bias {}.".format(inputs.shape, kernels.shape,
                                             bias.shape))
    ho, wo = h - kh + 1, w - kw + 1
    out = np.zeros((n, ho, wo, d))
    for i in range(kh):
        for j in range(kw):
            out += np.tensordot(x[:, i:i + ho, j:j + wo, :], kernels[i, j],
                                axes=([3], [0]))
    out += bias
    return out[0] if single else out


def conv2d_backward(grad_out: np.ndarray, inputs: np.ndarray,
                    kernels: np.ndarray
                    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (grad_inputs, grad_kernels, grad_bias) of conv2d_forward."""
    single = inputs.ndim == 3
    x = inputs[None] if single else inputs
    g = grad_out[None] if single else grad_out
    kh, kw = kernels.shape[:2]
    ho, wo = g.shape[1:3]
    grad_x = np.zeros_like(x)
    grad_k = np.zeros_like(kernels)
    for i in range(kh):
        for j in range(kw):
            grad_k[i, j] = np.tensordot(x[:, i:i + ho, j:j + wo, :], g,
                                        axes=([0, 1, 2], [0, 1, 2]))
            grad_x[:, i:i + ho, j:j + wo, :] += np.tensordot(
                g, kernels[i, j], axes=([3], [1]))
    grad_b = g.sum(axis=(0, 1, 2))
    return (grad_x[0] if single else grad_x), grad_k, grad_b


def maxpool2x2_forward(inputs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Non-overlapping 2x2 max pooling; trailing odd rows/columns dropped.

    Returns the pooled tensor and, per output cell, the flat index (0..3,
    row-major within the window) of the first maximum.
    """
    single = inputs.ndim == 3
    x = inputs[None] if single else inputs
    if x.ndim != 4 or x.shape[1] < 2 or x.shape[2] < 2:
        raise _shape_error("maxpool2x2 needs H, W >= 2, got shape {}."
                           .format(inputs.shape))
    n, h, w, c = x.shape
    h2, w2 = h // 2, w // 2
    windows = x[:, :2 * h2, :2 * w2, :].reshape(n, h2, 2, w2, 2, c)
    windows = windows.transpose(0, 1, 3, 5, 2, 4).reshape(n, h2, w2, c, 4)
    argmax = np.argmax(windows, axis=-1)
    pooled = np.take_along_axis(windows, argmax[..., None], axis=-1)[..., 0]
    if single:
        return pooled[0], argmax[0]
    return pooled, argmax


def maxpool2x2_backward(grad_out: np.ndarray, argmax: np.ndarray,
                        input_shape: tuple) -> np.ndarray:
    """Routes each upstream value to its window's recorded argmax."""
    single = len(input_shape) == 3
    g = grad_out[None] if single else grad_out
    a = argmax[None] if single else argmax
    shape = (1,) + tuple(input_shape) if single else tuple(input_shape)
    n, h, w, c = shape
    h2, w2 = g.shape[1:3]
    windows = np.zeros((n, h2, w2, c, 4))
    np.put_along_axis(windows, a[..., None], g[..., None], axis=-1)
    windows = windows.reshape(n, h2, w2, c, 2, 2).transpose(0, 1, 4, 2, 5, 3)
    grad_x = np.zeros(shape)
    grad_x[:, :2 * h2, :2 * w2, :] = windows.reshape(n, 2 * h2, 2 * w2, c)
    return grad_x[0] if single else grad_x


def dense_forward(inputs: np.ndarray, weights: np.ndarray,
                  bias: np.ndarray) -> np.ndarray:
    """out = weights . input + bias for a vector or a batch of row vectors."""
    if weights.ndim != 2 or inputs.shape[-1] != weights.shape[1] or \
            bias.shape != (weights.shape[0],):
        raise _shape_error("dense shape mismatch: input {}, weights {}, "
                           "bias {}.".format(inputs.shape, weights.shape,
                                             bias.shape))
    return inputs @ weights.T + bias


def dense_backward(grad_out: np.ndarray, inputs: np.ndarray,
                   weights: np.ndarray
                   ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    g = np.atleast_2d(grad_out)
    x = np.atleast_2d(inputs)
    grad_x = g @ weights
    grad_w = g.T @ x
    grad_b = g.sum(axis=0)
    if inputs.ndim == 1:
        grad_x = grad_x[0]
    return grad_x, grad_w, grad_b


def sigmoid(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    z = np.exp(-np.abs(x))
    return np.where(x >= 0, 1.0 / (1.0 + z), z / (1.0 + z))


def tanh(x: np.ndarray) -> np.ndarray:
    return np.tanh(np.asarray(x, dtype=np.float64))


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(np.asarray(x, dtype=np.float64), 0.0)


def softmax(z: np.ndarray) -> np.ndarray:
    """Softmax over the last axis with max subtraction."""
    z = np.asarray(z, dtype=np.float64)
    e = np.exp(z - z.max(axis=-1, keepdims=True))
    return e / e.sum(axis=-1, keepdims=True)


def softmax_xent_loss(logits: np.ndarray,
                      target) -> Tuple[float, np.ndarray]:
    """Cross-entropy of softmax(logits) against integer class targets.

    For a single (k,) logit vector: loss = -log softmax(z)[target] and the
    gradient is softmax(z) - one_hot(target). For an (N, k) batch the loss
    and gradient are averaged over the batch.
    """
    z = np.asarray(logits, dtype=np.float64)
    single = z.ndim == 1
    z2 = z[None] if single else z
    t = np.atleast_1d(np.asarray(target, dtype=np.int64))
    k = z2.shape[1]
    if t.shape[0] != z2.shape[0] or np.any(t < 0) or np.any(t >= k):
        msg = "Target class {} out of range for {} logits.".format(target, k)
        logger.error(msg)
        raise ValueError(msg)
    check_finite(z2, 'logits')
    shifted = z2 - z2.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=1))
    rows = np.arange(z2.shape[0])
    losses = log_norm - shifted[rows, t]
    grad = softmax(z2)
    grad[rows, t] -= 1.0
    if single:
        return float(losses[0]), grad[0]
    return float(losses.mean()), grad / z2.shape[0]

# --------------------------------------------------------------------------- #
#                                 LAYERS                                      #
# --------------------------------------------------------------------------- #


class Layer(ABC):
    """Base class for layers with a cached forward pass."""

    def __init__(self, name: str) -> None:
        self._name = name
        self._cache = None

    @property
    def name(self) -> str:
        return self._name

    def parameters(self) -> List[Parameter]:
        return []

    def _cached(self):
        if self._cache is None:
            msg = "{}: backward called before forward.".format(self._name)
            logger.error(msg)
            raise RuntimeError(msg)
        return self._cache

    @abstractmethod
    def forward(self, x: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def backward(self, grad: np.ndarray) -> np.ndarray:
        pass


class Conv2D(Layer):

    def __init__(self, name: str, in_channels: int, out_channels: int,
                 kernel_size: int, rng: np.random.Generator) -> None:
        super(Conv2D, self).__init__(name)
        k = kernel_size
        shape = (k, k, in_channels, out_channels)
        self.kernels = Parameter(name + '.kernels', glorot_uniform(
            rng, shape, k * k * in_channels, k * k * out_channels))
        self.bias = Parameter(name + '.bias', np.zeros(out_channels))

    def parameters(self) -> List[Parameter]:
        return [self.kernels, self.bias]

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._cache = x
        return conv2d_forward(x, self.kernels.value, self.bias.value)

    def backward(self, grad: np.ndarray) -> np.ndarray:
        x = self._cached()
        grad_x, grad_k, grad_b = conv2d_backward(grad, x, self.kernels.value)
        self.kernels.grad += grad_k
        self.bias.grad += grad_b
        return grad_x


class MaxPool2x2(Layer):

    def forward(self, x: np.ndarray) -> np.ndarray:
        pooled, argmax = maxpool2x2_forward(x)
        self._cache = (argmax, x.shape)
        return pooled

    @property
    def argmax(self) -> np.ndarray:
        """Window positions chosen by the last forward pass."""
        return self._cached()[0]

    def backward(self, grad: np.ndarray) -> np.ndarray:
        argmax, shape = self._cached()
        return maxpool2x2_backward(grad, argmax, shape)


class Dense(Layer):

    def __init__(self, name: str, in_features: int, out_features: int,
                 rng: np.random.Generator) -> None:
        super(Dense, self).__init__(name)
        self.weights = Parameter(name + '.weights', glorot_uniform(
            rng, (out_features, in_features), in_features, out_features))
        self.bias = Parameter(name + '.bias', np.zeros(out_features))

    def parameters(self) -> List[Parameter]:
        return [self.weights, self.bias]

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._cache = x
        return dense_forward(x, self.weights.value, self.bias.value)

    def backward(self, grad: np.ndarray) -> np.ndarray:
        x = self._cached()
        grad_x, grad_w, grad_b = dense_backward(grad, x, self.weights.value)
        self.weights.grad += grad_w
        self.bias.grad += grad_b
        return grad_x


class Flatten(Layer):

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._cache = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, grad: np.ndarray) -> np.ndarray:
        return grad.reshape(self._cached())


class ReLU(Layer):

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._cache = x > 0
        return relu(x)

    def backward(self, grad: np.ndarray) -> np.ndarray:
        return grad * self._cached()


class Tanh(Layer):

    def forward(self, x: np.ndarray) -> np.ndarray:
        y = tanh(x)
        self._cache = y
        return y

    def backward(self, grad: np.ndarray) -> np.ndarray:
        y = self._cached()
        return grad * (1.0 - y * y)


class Sigmoid(Layer):

    def forward(self, x: np.ndarray) -> np.ndarray:
        y = sigmoid(x)
        self._cache = y
        return y

    def backward(self, grad: np.ndarray) -> np.ndarray:
        y = self._cached()
        return grad * y * (1.0 - y)


ACTIVATIONS = {'relu': ReLU, 'tanh': Tanh, 'sigmoid': Sigmoid}


def activation_layer(kind: str, name: str) -> Layer:
    try:
        return ACTIVATIONS[kind](name)
    except KeyError:
        msg = "Unknown activation '{}'. Expected one of {}.".format(
            kind, sorted(ACTIVATIONS))
        logger.error(msg)
        raise ValueError(msg)


class Sequential:
    """Runs layers in order forward and in reverse order backward."""

    def __init__(self, layers: List[Layer]) -> None:
        self._layers = list(layers)

    @property
    def layers(self) -> List[Layer]:
        return self._layers

    def forward(self, x: np.ndarray) -> np.ndarray:
        for layer in self._layers:
            x = layer.forward(x)
        return x

    def backward(self, grad: np.ndarray) -> Optional[np.ndarray]:
        for layer in reversed(self._layers):
            grad = layer.backward(grad)
        return grad

    def parameters(self) -> List[Parameter]:
        params = []
        for layer in self._layers:
            params.extend(layer.parameters())
        return params
