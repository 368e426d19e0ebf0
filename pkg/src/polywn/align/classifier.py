"""Linear similarity classifier with a sigmoid output."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import IO

import numpy as np

MODEL_HEADER = "polywn-similarity-model"
MODEL_VERSION = 1


def _sigmoid(z):
    z = np.clip(z, -500.0, 500.0)
    return 1.0 / (1.0 + np.exp(-z))


@dataclass(frozen=True, eq=False)
class SimilarityModel:
    feature_names: tuple[str, ...]
    weights: np.ndarray
    bias: float

    def vectorize(self, features: Mapping[str, float]) -> np.ndarray:
        if set(features) != set(self.feature_names) or len(features) != len(self.feature_names):
            missing = sorted(set(self.feature_names) - set(features))
            extra = sorted(set(features) - set(self.feature_names))
            raise ValueError(f"feature schema mismatch (missing {missing}, unexpected {extra})")
        return np.array([features[n] for n in self.feature_names], dtype=np.float64)

    def predict_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != len(self.feature_names):
            raise ValueError(f"expected an (n, {len(self.feature_names)}) feature matrix, got {X.shape}")
        return _sigmoid(X @ self.weights + self.bias)

    def save(self, fp: IO[str]) -> None:
        fp.write(f"{MODEL_HEADER}\t{MODEL_VERSION}\n")
        fp.write(f"bias\t{float(self.bias)!r}\n")
        for name, w in zip(self.feature_names, self.weights):
            fp.write(f"weight\t{name}\t{float(w)!r}\n")


def load_model(fp: IO[str]) -> SimilarityModel:
    header = fp.readline().rstrip("\n").split("\t")
    if len(header) != 2 or header[0] != MODEL_HEADER:
        raise ValueError("not a similarity model file")
    if header[1] != str(MODEL_VERSION):
        raise ValueError(f"unsupported model version {header[1]}")
    bias = None
    names, weights = [], []
    for line in fp:
        parts = line.rstrip("\n").split("\t")
        if parts == [""]:
            continue
        if parts[0] == "bias" and len(parts) == 2:
            bias = float(parts[1])
        elif parts[0] == "weight" and len(parts) == 3:
            names.append(parts[1])
            weights.append(float(parts[2]))
        else:
            raise ValueError(f"bad model line {line!r}")
    if bias is None:
        raise ValueError("model file has no bias")
    return SimilarityModel(tuple(names), np.array(weights, dtype=np.float64), bias)


def predict_similarity(model: SimilarityModel, features: Mapping[str, float]) -> float:
    """Similarity in [0, 1] for one feature dict."""
    return float(_sigmoid(model.vectorize(features) @ model.weights + model.bias))


def train_similarity_model(
    pairs: Sequence[tuple[Mapping[str, float], int]],
    l2: float = 1e-3,
    learning_rate: float = 1.0,
    iterations: int = 2000,
    balanced: bool = True,
) -> SimilarityModel:
    """Fit L2-regularised logistic regression by full-batch gradient descent.

    Starts from zero weights and runs a fixed number of steps, so the result
    depends only on the training data.  ``balanced`` reweights the classes
    to equal total mass, since true links are far rarer than non-links.
    """
    if not pairs:
        raise ValueError("no training pairs")
    names = tuple(pairs[0][0])
    if any(set(f) != set(names) for f, _ in pairs):
        raise ValueError("training pairs use differing feature schemas")
    X = np.array([[f[n] for n in names] for f, _ in pairs], dtype=np.float64)
    y = np.array([int(label) for _, label in pairs], dtype=np.float64)
    return fit_logistic(X, y, names, l2, learning_rate, iterations, balanced)


def fit_logistic(X, y, names, l2=1e-3, learning_rate=1.0, iterations=2000, balanced=True) -> SimilarityModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("labels must be 0 or 1")
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("training data must contain both classes")
    if X.shape[1] == 0 or not np.any(np.ptp(X, axis=0) > 0):
        raise ValueError("no feature varies across the training pairs; nothing to learn")
    if balanced:
        sw = np.where(y == 1, 0.5 / n_pos, 0.5 / n_neg)
    else:
        sw = np.full(len(y), 1.0 / len(y))
    w = np.zeros(X.shape[1])
    b = 0.0
    for _ in range(iterations):
        err = (_sigmoid(X @ w + b) - y) * sw
        w -= learning_rate * (X.T @ err + l2 * w)
        b -= learning_rate * err.sum()
    return SimilarityModel(tuple(names), w, float(b))
