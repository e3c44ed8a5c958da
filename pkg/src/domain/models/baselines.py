#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\domain\models\baselines.py                                  #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Saturday, September 11th 2021, 4:31:56 pm                        #
# Modified : Friday, September 17th 2021, 10:44:08 am                         #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
"""Comparison classifiers: a Gini CART decision tree and an RBF-kernel SVM
trained by sequential minimal optimization, one-vs-one for three classes."""
from collections import OrderedDict
from dataclasses import dataclass, asdict
import itertools
import logging
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np
from sklearn.metrics.pairwise import rbf_kernel as pairwise_rbf_kernel
from sklearn.preprocessing import StandardScaler

from ..datasets import N_CLASSES
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
SPLIT_TOLERANCE = 1e-12
SMO_TAU = 1e-12
LEAF = -1
# --------------------------------------------------------------------------- #
#                              CONFIGURATION                                  #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class DtConfig:
    criterion: str = 'gini'
    min_samples_split: int = 2
    min_samples_leaf: int = 1
    max_depth: Optional[int] = None

    def __post_init__(self) -> None:
        if self.criterion != 'gini':
            msg = "Only the gini criterion is supported, got '{}'.".format(
                self.criterion)
            logger.error(msg)
            raise ValueError(msg)
        if self.min_samples_split < 2 or self.min_samples_leaf < 1:
            msg = "min_samples_split must be >= 2 and min_samples_leaf >= 1."
            logger.error(msg)
            raise ValueError(msg)
        if self.max_depth is not None and self.max_depth < 0:
            msg = "max_depth must be non-negative, got {}.".format(
                self.max_depth)
            logger.error(msg)
            raise ValueError(msg)

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class SvmConfig:
    """RBF soft-margin SVM settings.

    max_passes caps the number of SMO pair updates at max_passes x n.
    """

    kernel: str = 'rbf'
    C: float = 1.0
    gamma: float = 0.033
    tolerance: float = 1e-3
    max_passes: int = 1000
    standardize: bool = True

    def __post_init__(self) -> None:
        if self.kernel != 'rbf':
            msg = "Only the rbf kernel is supported, got '{}'.".format(
                self.kernel)
            logger.error(msg)
            raise ValueError(msg)
        if not self.C > 0 or self.gamma < 0 or not self.tolerance > 0 or \
                self.max_passes < 1:
            msg = "SvmConfig requires C > 0, gamma >= 0, tolerance > 0 and "\
                "max_passes >= 1."
            logger.error(msg)
            raise ValueError(msg)

    def to_dict(self) -> Dict:
        return asdict(self)


def _check_xy(features: np.ndarray, labels: np.ndarray
              ) -> Tuple[np.ndarray, np.ndarray]:
    X = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels)
    if X.ndim != 2 or X.shape[0] < 1 or y.shape != (X.shape[0],):
        msg = "Expected features (n, d) with n >= 1 and labels (n,), got {} "\
            "and {}.".format(X.shape, y.shape)
        logger.error(msg)
        raise ValueError(msg)
    return X, y


def _not_fitted(name: str) -> RuntimeError:
    msg = "{} must be fit before predicting.".format(name)
    logger.error(msg)
    return RuntimeError(msg)

# --------------------------------------------------------------------------- #
#                              DECISION TREE                                  #
# --------------------------------------------------------------------------- #


def gini_impurity(class_counts) -> float:
    """1 - sum p_i^2 over the class proportions."""
    counts = np.asarray(class_counts, dtype=np.float64)
    if np.any(counts < 0) or counts.sum() <= 0:
        msg = "Class counts must be non-negative and not all zero, got {}."\
            .format(class_counts)
        logger.error(msg)
        raise ValueError(msg)
    p = counts / counts.sum()
    return float(1.0 - np.sum(p * p))


def _gini_rows(counts: np.ndarray) -> np.ndarray:
    totals = counts.sum(axis=1)
    p = counts / totals[:, None]
    return 1.0 - np.sum(p * p, axis=1)


def best_split(X: np.ndarray, y: np.ndarray, min_samples_leaf: int = 1,
               n_classes: int = N_CLASSES
               ) -> Optional[Tuple[int, float, float]]:
    """Lowest weighted child Gini over features and midpoint thresholds.

    Returns (feature, threshold, weighted impurity) or None when no split
    honors min_samples_leaf. Ties within SPLIT_TOLERANCE resolve to the
    lowest feature index, then the lowest threshold.
    """
    n, d = X.shape
    best = None
    for feature in range(d):
        order = np.argsort(X[:, feature], kind='stable')
        xs = X[order, feature]
        onehot = np.eye(n_classes)[y[order]]
        left = np.cumsum(onehot, axis=0)[:-1]
        right = onehot.sum(axis=0) - left
        n_left = np.arange(1, n)
        valid = (xs[1:] > xs[:-1]) & (n_left >= min_samples_leaf) & \
            (n - n_left >= min_samples_leaf)
        if not np.any(valid):
            continue
        positions = np.flatnonzero(valid)
        weighted = (n_left[positions] * _gini_rows(left[positions]) +
                    (n - n_left[positions]) * _gini_rows(right[positions])) / n
        first = int(np.flatnonzero(
            weighted <= weighted.min() + SPLIT_TOLERANCE)[0])
        p = positions[first]
        threshold = (xs[p] + xs[p + 1]) / 2.0
        if not xs[p] <= threshold < xs[p + 1]:
            threshold = xs[p]
        if best is None or weighted[first] < best[2] - SPLIT_TOLERANCE:
            best = (feature, float(threshold), float(weighted[first]))
    return best


class DecisionTree:
    """Greedy CART classifier stored as a preorder node table.

    Each node row holds (feature, threshold, left, right, class, n_samples);
    leaves have feature == -1. Samples with value <= threshold go left.
    """

    kind = 'dt'

    def __init__(self, cfg: DtConfig = None) -> None:
        self._cfg = cfg or DtConfig()
        self._nodes = None
        self._n_features = None

    @property
    def cfg(self) -> DtConfig:
        return self._cfg

    @property
    def nodes(self) -> np.ndarray:
        if self._nodes is None:
            raise _not_fitted('DecisionTree')
        return self._nodes

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.nodes[:, 0] == LEAF))

    @property
    def depth(self) -> int:
        def walk(i: int) -> int:
            node = self._nodes[i]
            if node[0] == LEAF:
                return 0
            return 1 + max(walk(int(node[2])), walk(int(node[3])))
        return walk(0)

    def fit(self, features: np.ndarray, labels: np.ndarray) -> "DecisionTree":
        X, y = _check_xy(features, labels)
        y = y.astype(np.int64)
        rows = []
        self._grow(X, y, 0, rows)
        self._nodes = np.array(rows, dtype=np.float64)
        self._n_features = X.shape[1]
        logger.debug("Grew decision tree with {} nodes, {} leaves.".format(
            len(rows), self.n_leaves))
        return self

    def _grow(self, X: np.ndarray, y: np.ndarray, depth: int,
              rows: List[List[float]]) -> int:
        counts = np.bincount(y, minlength=N_CLASSES)
        index = len(rows)
        rows.append([LEAF, 0.0, LEAF, LEAF, int(np.argmax(counts)), len(y)])
        impurity = gini_impurity(counts)
        if impurity == 0.0 or len(y) < self._cfg.min_samples_split or \
                (self._cfg.max_depth is not None and
                 depth >= self._cfg.max_depth):
            return index
        split = best_split(X, y, self._cfg.min_samples_leaf)
        if split is None or not split[2] < impurity - SPLIT_TOLERANCE:
            return index
        feature, threshold, _ = split
        goes_left = X[:, feature] <= threshold
        left = self._grow(X[goes_left], y[goes_left], depth + 1, rows)
        right = self._grow(X[~goes_left], y[~goes_left], depth + 1, rows)
        rows[index][:4] = [feature, threshold, left, right]
        return index

    def predict(self, features: np.ndarray) -> np.ndarray:
        nodes = self.nodes
        X = np.atleast_2d(np.asarray(features, dtype=np.float64))
        if X.shape[1] != self._n_features:
            msg = "Tree was fit on {} features, got {}.".format(
                self._n_features, X.shape[1])
            logger.error(msg)
            raise ValueError(msg)
        out = np.empty(X.shape[0], dtype=np.int64)
        for row, x in enumerate(X):
            i = 0
            while nodes[i, 0] != LEAF:
                feature = int(nodes[i, 0])
                i = int(nodes[i, 2] if x[feature] <= nodes[i, 1]
                        else nodes[i, 3])
            out[row] = int(nodes[i, 4])
        return out

    def state(self) -> Tuple[Dict, "OrderedDict[str, np.ndarray]"]:
        meta = {'config': self._cfg.to_dict(), 'n_features': self._n_features}
        return meta, OrderedDict([('nodes', self.nodes.copy())])

    @classmethod
    def from_state(cls, meta: Mapping,
                   arrays: Mapping[str, np.ndarray]) -> "DecisionTree":
        tree = cls(DtConfig(**meta['config']))
        tree._nodes = np.asarray(arrays['nodes'], dtype=np.float64)
        tree._n_features = int(meta['n_features'])
        return tree


def dt_fit(features: np.ndarray, labels: np.ndarray,
           cfg: DtConfig = None) -> DecisionTree:
    return DecisionTree(cfg).fit(features, labels)


def dt_predict(tree: DecisionTree, feature_vector: np.ndarray) -> int:
    return int(tree.predict(np.asarray(feature_vector)[None])[0])

# --------------------------------------------------------------------------- #
#                                 KERNEL                                      #
# --------------------------------------------------------------------------- #


def rbf_kernel(x: np.ndarray, y: np.ndarray, gamma: float) -> float:
    """exp(-gamma ||x - y||^2)."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if x.shape != y.shape:
        msg = "Kernel arguments differ in dimension: {} vs {}.".format(
            x.size, y.size)
        logger.error(msg)
        raise ValueError(msg)
    diff = x - y
    return float(np.exp(-gamma * np.dot(diff, diff)))


def kernel_matrix(X: np.ndarray, Y: np.ndarray = None,
                  gamma: float = 0.033) -> np.ndarray:
    return pairwise_rbf_kernel(X, Y, gamma=gamma)

# --------------------------------------------------------------------------- #
#                              BINARY SVM (SMO)                               #
# --------------------------------------------------------------------------- #


def dual_objective(alphas: np.ndarray, labels: np.ndarray,
                   kernel: np.ndarray) -> float:
    """sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij."""
    ay = alphas * labels
    return float(alphas.sum() - 0.5 * ay @ kernel @ ay)


@dataclass(frozen=True)
class BinarySvm:
    alphas: np.ndarray
    bias: float
    support: np.ndarray
    support_vectors: np.ndarray
    dual_coef: np.ndarray
    gamma: float
    iterations: int = 0

    def decision_function(self, features: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(features, dtype=np.float64))
        if len(self.support) == 0:
            return np.full(X.shape[0], self.bias)
        K = kernel_matrix(X, self.support_vectors, self.gamma)
        return K @ self.dual_coef + self.bias

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.where(self.decision_function(features) > 0, 1, -1)


def _smo_update(i: int, j: int, alphas: np.ndarray, y: np.ndarray,
                G: np.ndarray, Q: np.ndarray, C: float) -> None:
    """Two-variable analytic step on (alpha_i, alpha_j), clipped to [0, C]."""
    a_i, a_j = alphas[i], alphas[j]
    if y[i] != y[j]:
        quad = max(Q[i, i] + Q[j, j] + 2.0 * Q[i, j], SMO_TAU)
        delta = (-G[i] - G[j]) / quad
        diff = a_i - a_j
        a_i += delta
        a_j += delta
        if diff > 0:
            if a_j < 0:
                a_j, a_i = 0.0, diff
        elif a_i < 0:
            a_i, a_j = 0.0, -diff
        if diff > 0:
            if a_i > C:
                a_i, a_j = C, C - diff
        elif a_j > C:
            a_j, a_i = C, C + diff
    else:
        quad = max(Q[i, i] + Q[j, j] - 2.0 * Q[i, j], SMO_TAU)
        delta = (G[i] - G[j]) / quad
        total = a_i + a_j
        a_i -= delta
        a_j += delta
        if total > C:
            if a_i > C:
                a_i, a_j = C, total - C
        elif a_j < 0:
            a_j, a_i = 0.0, total
        if total > C:
            if a_j > C:
                a_j, a_i = C, total - C
        elif a_i < 0:
            a_i, a_j = 0.0, total
    G += Q[:, i] * (a_i - alphas[i]) + Q[:, j] * (a_j - alphas[j])
    alphas[i], alphas[j] = a_i, a_j


def _bias(alphas: np.ndarray, y: np.ndarray, G: np.ndarray,
          C: float) -> float:
    """b = -rho, rho averaged over free vectors or the bound midpoint."""
    yG = y * G
    free = (alphas > 0) & (alphas < C)
    if np.any(free):
        return float(-yG[free].mean())
    at_upper = alphas >= C
    upper_side = (at_upper & (y < 0)) | (~at_upper & (y > 0))
    ub = yG[upper_side].min() if np.any(upper_side) else np.inf
    lb = yG[~upper_side].max() if np.any(~upper_side) else -np.inf
    return float(-(ub + lb) / 2.0)


def svm_fit_binary(features: np.ndarray, labels: np.ndarray,
                   cfg: SvmConfig = None) -> BinarySvm:
    """Soft-margin dual solved by SMO with maximal-violating-pair selection.

    Stops when the KKT gap max_{I_up}(-y G) - min_{I_low}(-y G) falls below
    cfg.tolerance. Labels must be -1 or +1 with both present.
    """
    cfg = cfg or SvmConfig()
    X, y = _check_xy(features, labels)
    y = y.astype(np.float64)
    if not np.all(np.isin(y, (-1.0, 1.0))) or len(np.unique(y)) < 2:
        msg = "Binary SVM needs labels in {-1, +1} with both classes present."
        logger.error(msg)
        raise ValueError(msg)
    n, C = X.shape[0], cfg.C
    Q = np.outer(y, y) * kernel_matrix(X, gamma=cfg.gamma)
    alphas = np.zeros(n)
    G = -np.ones(n)
    iterations = 0
    limit = cfg.max_passes * n
    while iterations < limit:
        score = -y * G
        up = ((y > 0) & (alphas < C)) | ((y < 0) & (alphas > 0))
        low = ((y > 0) & (alphas > 0)) | ((y < 0) & (alphas < C))
        i = int(np.flatnonzero(up)[np.argmax(score[up])])
        j = int(np.flatnonzero(low)[np.argmin(score[low])])
        if score[i] - score[j] < cfg.tolerance:
            break
        _smo_update(i, j, alphas, y, G, Q, C)
        iterations += 1
    else:
        logger.warning("SMO stopped at the iteration cap of {}.".format(limit))

    support = np.flatnonzero(alphas > 0)
    return BinarySvm(alphas=alphas, bias=_bias(alphas, y, G, C),
                     support=support, support_vectors=X[support].copy(),
                     dual_coef=alphas[support] * y[support], gamma=cfg.gamma,
                     iterations=iterations)

# --------------------------------------------------------------------------- #
#                            MULTICLASS SVM                                   #
# --------------------------------------------------------------------------- #


def vote(decisions: np.ndarray, pairs: List[Tuple[int, int]],
         n_classes: int = N_CLASSES) -> np.ndarray:
    """One-vs-one voting over an (n, n_pairs) decision matrix.

    f > 0 votes for the first class of a pair. Ties in votes go to the
    class whose won machines include the largest |f|, then the lowest index.
    """
    n = decisions.shape[0]
    votes = np.zeros((n, n_classes), dtype=np.int64)
    strength = np.zeros((n, n_classes))
    rows = np.arange(n)
    for k, (a, b) in enumerate(pairs):
        f = decisions[:, k]
        winner = np.where(f > 0, a, b)
        votes[rows, winner] += 1
        strength[rows, winner] = np.maximum(strength[rows, winner],
                                            np.abs(f))
    out = np.empty(n, dtype=np.int64)
    for r in range(n):
        tied = np.flatnonzero(votes[r] == votes[r].max())
        out[r] = tied[np.argmax(strength[r, tied])]
    return out


class MulticlassSvm:
    """One-vs-one RBF SVM over all class pairs, with optional per-feature
    standardization fit on the training features."""

    kind = 'svm'

    def __init__(self, cfg: SvmConfig = None,
                 n_classes: int = N_CLASSES) -> None:
        self._cfg = cfg or SvmConfig()
        self._n_classes = n_classes
        self._pairs = list(itertools.combinations(range(n_classes), 2))
        self._machines = None
        self._scaler = None

    @property
    def cfg(self) -> SvmConfig:
        return self._cfg

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return self._pairs

    @property
    def machines(self) -> List[BinarySvm]:
        if self._machines is None:
            raise _not_fitted('MulticlassSvm')
        return self._machines

    def _transform(self, X: np.ndarray) -> np.ndarray:
        return self._scaler.transform(X) if self._scaler is not None else X

    def fit(self, features: np.ndarray,
            labels: np.ndarray) -> "MulticlassSvm":
        X, y = _check_xy(features, labels)
        missing = set(range(self._n_classes)) - set(np.unique(y).tolist())
        if missing:
            msg = "Multiclass SVM needs every class; missing {}.".format(
                sorted(missing))
            logger.error(msg)
            raise ValueError(msg)
        if self._cfg.standardize:
            self._scaler = StandardScaler().fit(X)
        X = self._transform(X)
        machines = []
        for a, b in self._pairs:
            mask = (y == a) | (y == b)
            machine = svm_fit_binary(X[mask], np.where(y[mask] == a, 1, -1),
                                     self._cfg)
            logger.debug("SVM {} vs {}: {} support vectors, {} iterations."
                         .format(a, b, len(machine.support),
                                 machine.iterations))
            machines.append(machine)
        self._machines = machines
        return self

    def decision_function(self, features: np.ndarray) -> np.ndarray:
        X = self._transform(np.atleast_2d(
            np.asarray(features, dtype=np.float64)))
        return np.column_stack([m.decision_function(X)
                                for m in self.machines])

    def predict(self, features: np.ndarray) -> np.ndarray:
        return vote(self.decision_function(features), self._pairs,
                    self._n_classes)

    def state(self) -> Tuple[Dict, "OrderedDict[str, np.ndarray]"]:
        arrays = OrderedDict()
        if self._scaler is not None:
            arrays['scaler.mean'] = self._scaler.mean_.copy()
            arrays['scaler.scale'] = self._scaler.scale_.copy()
        for (a, b), m in zip(self._pairs, self.machines):
            prefix = 'svm_{}_{}.'.format(a, b)
            arrays[prefix + 'support_vectors'] = m.support_vectors
            arrays[prefix + 'dual_coef'] = m.dual_coef
            arrays[prefix + 'bias'] = np.array([m.bias])
        return {'config': self._cfg.to_dict()}, arrays

    @classmethod
    def from_state(cls, meta: Mapping,
                   arrays: Mapping[str, np.ndarray]) -> "MulticlassSvm":
        model = cls(SvmConfig(**meta['config']))
        if 'scaler.mean' in arrays:
            scaler = StandardScaler()
            scaler.mean_ = np.asarray(arrays['scaler.mean'])
            scaler.scale_ = np.asarray(arrays['scaler.scale'])
            scaler.var_ = scaler.scale_ ** 2
            scaler.n_features_in_ = scaler.mean_.size
            model._scaler = scaler
        machines = []
        for a, b in model._pairs:
            prefix = 'svm_{}_{}.'.format(a, b)
            coef = np.asarray(arrays[prefix + 'dual_coef'])
            machines.append(BinarySvm(
                alphas=np.abs(coef), bias=float(arrays[prefix + 'bias'][0]),
                support=np.arange(coef.size),
                support_vectors=np.asarray(arrays[prefix + 'support_vectors']),
                dual_coef=coef, gamma=model._cfg.gamma))
        model._machines = machines
        return model


def svm_fit_multiclass(features: np.ndarray, labels: np.ndarray,
                       cfg: SvmConfig = None) -> MulticlassSvm:
    return MulticlassSvm(cfg).fit(features, labels)


def svm_predict(model: MulticlassSvm, feature_vector: np.ndarray) -> int:
    return int(model.predict(np.asarray(feature_vector)[None])[0])
