"""
Trained regressor models mapping estimator-score vectors to subjective scores.

Both models carry the training-fold standardization so they consume raw
estimator scores and return scores in the subjective units of the database.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ShapeError


@dataclass(frozen=True)
class Standardization:
    """Per-column z-score statistics taken from training data only."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self) -> None:
        mean = np.atleast_1d(np.array(self.mean, dtype=np.float64))
        std = np.atleast_1d(np.array(self.std, dtype=np.float64))
        if mean.shape != std.shape or mean.ndim != 1:
            raise ShapeError("Standardization mean/std must be equal-length vectors")
        if np.any(std <= 0) or not np.all(np.isfinite(std)) or not np.all(np.isfinite(mean)):
            raise ValueError("Standardization std must be positive and finite")
        for arr in (mean, std):
            arr.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)

    def apply(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean) / self.std


@dataclass(frozen=True)
class TargetScaling:
    mean: float
    std: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.mean) and np.isfinite(self.std) and self.std > 0):
            raise ValueError("TargetScaling needs finite mean and positive std")

    def invert(self, z):
        return z * self.std + self.mean


def _as_rows(X, input_dim: int) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2 or X.shape[1] != input_dim:
        raise ShapeError(f"Expected {input_dim} input values per row, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("Model inputs must be finite")
    return X


def _frozen(arr, ndim: int, name: str) -> np.ndarray:
    arr = np.array(arr, dtype=np.float64)
    if arr.ndim != ndim:
        raise ShapeError(f"{name} must be {ndim}-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class NNModel:
    """
    Single-hidden-layer network: y = W2 . tanh(W1 x + b1) + b2.

    Attributes:
        W1: hidden_dim x input_dim weights
        b1: hidden biases
        W2: output weights
        b2: output bias
        input_standardization: training statistics of each input column
        target_scaling: training statistics of the target
    """

    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: float
    input_standardization: Standardization
    target_scaling: TargetScaling

    def __post_init__(self) -> None:
        W1 = _frozen(self.W1, 2, "W1")
        b1 = _frozen(self.b1, 1, "b1")
        W2 = _frozen(self.W2, 1, "W2")
        hidden = W1.shape[0]
        if b1.shape != (hidden,) or W2.shape != (hidden,):
            raise ShapeError("NNModel bias/output weights must match hidden_dim")
        if self.input_standardization.mean.shape != (W1.shape[1],):
            raise ShapeError("NNModel standardization must match input_dim")
        if not np.isfinite(self.b2):
            raise ValueError("b2 must be finite")
        object.__setattr__(self, "W1", W1)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "W2", W2)
        object.__setattr__(self, "b2", float(self.b2))

    @property
    def input_dim(self) -> int:
        return int(self.W1.shape[1])

    @property
    def hidden_dim(self) -> int:
        return int(self.W1.shape[0])

    def predict_many(self, X) -> np.ndarray:
        Z = self.input_standardization.apply(_as_rows(X, self.input_dim))
        hidden = np.tanh(Z @ self.W1.T + self.b1)
        return self.target_scaling.invert(hidden @ self.W2 + self.b2)


@dataclass(frozen=True)
class SVRModel:
    """
    Linear epsilon-SVR: y = w . x + b in standardized space.

    Attributes:
        w: weight vector
        b: bias
        C: box constraint used in training
        epsilon: tube half-width (standardized target units)
        input_standardization / target_scaling: training statistics
        kkt_violation: worst KKT violation at the end of training
        support_vectors: number of samples with a nonzero dual coefficient
    """

    w: np.ndarray
    b: float
    C: float
    epsilon: float
    input_standardization: Standardization
    target_scaling: TargetScaling
    kkt_violation: float = 0.0
    support_vectors: int = 0

    def __post_init__(self) -> None:
        w = _frozen(self.w, 1, "w")
        if self.input_standardization.mean.shape != w.shape:
            raise ShapeError("SVRModel standardization must match input_dim")
        if self.C <= 0 or self.epsilon < 0:
            raise ValueError("SVRModel needs C > 0 and epsilon >= 0")
        if not np.isfinite(self.b):
            raise ValueError("b must be finite")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "b", float(self.b))

    @property
    def input_dim(self) -> int:
        return int(self.w.shape[0])

    def predict_many(self, X) -> np.ndarray:
        Z = self.input_standardization.apply(_as_rows(X, self.input_dim))
        return self.target_scaling.invert(Z @ self.w + self.b)

