#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\models\optimizers.py                                 #
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
"""First-order optimizers: heavy-ball SGD with momentum and Adam."""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .layers import Parameter
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


class OptimizerKind(Enum):
    SGD_MOMENTUM = 'sgd_momentum'
    ADAM = 'adam'


@dataclass
class OptimizerState:
    """Auxiliary buffers of one optimizer, one entry per parameter.

    SGD_MOMENTUM keeps 'velocity'; ADAM keeps 'm' and 'v'. Buffers are
    created lazily on the first step so their shapes follow the parameters.
    """

    kind: OptimizerKind
    learning_rate: float
    momentum: float = 0.9
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    step: int = 0
    buffers: Dict[str, List[np.ndarray]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.kind = OptimizerKind(self.kind)
        if not self.learning_rate > 0:
            msg = "Learning rate must be positive, got {}.".format(
                self.learning_rate)
            logger.error(msg)
            raise ValueError(msg)
        if not 0 <= self.momentum < 1:
            msg = "Momentum must lie in [0, 1), got {}.".format(self.momentum)
            logger.error(msg)
            raise ValueError(msg)
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            msg = "Adam betas must lie in [0, 1), got {}, {}.".format(
                self.beta1, self.beta2)
            logger.error(msg)
            raise ValueError(msg)

    def _buffers(self, name: str, params: Sequence[np.ndarray]
                 ) -> List[np.ndarray]:
        if name not in self.buffers:
            self.buffers[name] = [np.zeros_like(p, dtype=np.float64)
                                  for p in params]
        return self.buffers[name]


def _check_shapes(params: Sequence[np.ndarray],
                  grads: Sequence[np.ndarray],
                  buffers: Sequence[np.ndarray] = ()) -> None:
    if len(params) != len(grads):
        msg = "Got {} parameters but {} gradients.".format(len(params),
                                                             len(grads))
        logger.error(msg)
        raise ValueError(msg)
    for i, (p, g) in enumerate(zip(params, grads)):
        if np.shape(p) != np.shape(g):
            msg = "Parameter {} has shape {} but its gradient has {}.".format(
                i, np.shape(p), np.shape(g))
            logger.error(msg)
            raise ValueError(msg)
    for i, (p, b) in enumerate(zip(params, buffers)):
        if np.shape(p) != np.shape(b):
            msg = "Optimizer buffer {} has shape {}, parameter has {}.".format(
                i, np.shape(b), np.shape(p))
            logger.error(msg)
            raise ValueError(msg)

# --------------------------------------------------------------------------- #
#                              STEP FUNCTIONS                                 #
# --------------------------------------------------------------------------- #


def sgd_momentum_step(params: Sequence[np.ndarray],
                      grads: Sequence[np.ndarray],
                      state: OptimizerState
                      ) -> Tuple[List[np.ndarray], OptimizerState]:
    """v <- mu v + g; w <- w - lr v. Returns new arrays; state is updated."""
    velocity = state._buffers('velocity', params)
    _check_shapes(params, grads, velocity)
    updated = []
    for i, (w, g) in enumerate(zip(params, grads)):
        velocity[i] = state.momentum * velocity[i] + g
        updated.append(w - state.learning_rate * velocity[i])
    state.step += 1
    return updated, state


def adam_step(params: Sequence[np.ndarray], grads: Sequence[np.ndarray],
              state: OptimizerState
              ) -> Tuple[List[np.ndarray], OptimizerState]:
    """Bias-corrected Adam update. Returns new arrays; state is updated."""
    m = state._buffers('m', params)
    v = state._buffers('v', params)
    _check_shapes(params, grads, m)
    t = state.step + 1
    correction1 = 1.0 - state.beta1 ** t
    correction2 = 1.0 - state.beta2 ** t
    updated = []
    for i, (w, g) in enumerate(zip(params, grads)):
        m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g
        v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g * g
        m_hat = m[i] / correction1
        v_hat = v[i] / correction2
        updated.append(w - state.learning_rate * m_hat /
                       (np.sqrt(v_hat) + state.epsilon))
    state.step = t
    return updated, state


STEP_FUNCTIONS = {
    OptimizerKind.SGD_MOMENTUM: sgd_momentum_step,
    OptimizerKind.ADAM: adam_step,
}

# --------------------------------------------------------------------------- #
#                               OPTIMIZERS                                    #
# --------------------------------------------------------------------------- #


class Optimizer(ABC):
    """Applies a step function to a fixed list of Parameters in place."""

    def __init__(self, parameters: List[Parameter],
                 state: OptimizerState) -> None:
        self._parameters = list(parameters)
        self._state = state

    @property
    def state(self) -> OptimizerState:
        return self._state

    @property
    @abstractmethod
    def kind(self) -> OptimizerKind:
        pass

    def zero_grad(self) -> None:
        for p in self._parameters:
            p.zero_grad()

    def step(self) -> None:
        values = [p.value for p in self._parameters]
        grads = [p.grad for p in self._parameters]
        updated, self._state = STEP_FUNCTIONS[self.kind](values, grads,
                                                         self._state)
        for p, value in zip(self._parameters, updated):
            p.value = value


class SGDMomentum(Optimizer):

    def __init__(self, parameters: List[Parameter],
                 learning_rate: float = 0.01,
                 momentum: float = 0.9) -> None:
        state = OptimizerState(kind=OptimizerKind.SGD_MOMENTUM,
                               learning_rate=learning_rate, momentum=momentum)
        super(SGDMomentum, self).__init__(parameters, state)

    @property
    def kind(self) -> OptimizerKind:
        return OptimizerKind.SGD_MOMENTUM


class Adam(Optimizer):

    def __init__(self, parameters: List[Parameter],
                 learning_rate: float = 0.001, beta1: float = 0.9,
                 beta2: float = 0.999, epsilon: float = 1e-8) -> None:
        state = OptimizerState(kind=OptimizerKind.ADAM,
                               learning_rate=learning_rate, beta1=beta1,
                               beta2=beta2, epsilon=epsilon)
        super(Adam, self).__init__(parameters, state)

    @property
    def kind(self) -> OptimizerKind:
        return OptimizerKind.ADAM
