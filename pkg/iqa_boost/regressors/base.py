"""
Base learner class and the training-fold standardization shared by all learners.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import DegenerateInputError, NumericError, ShapeError
from ..models import Standardization, TargetScaling


def check_training_data(X, y) -> Tuple[np.ndarray, np.ndarray]:
    """Coerce to float arrays and check shapes and finiteness."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).ravel()
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ShapeError(f"X must be a 2-D matrix, got shape {X.shape}")
    if X.shape[0] != y.shape[0]:
        raise ShapeError(f"X has {X.shape[0]} rows but y has {y.shape[0]} values")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise NumericError("Training data contains non-finite values")
    return X, y


def standardize(
    X: np.ndarray, y: np.ndarray, column_names: Optional[Sequence[str]] = None
) -> Tuple[np.ndarray, np.ndarray, Standardization, TargetScaling]:
    """
    Z-score the inputs and target with statistics of the given (training) rows.

    A constant target is left unscaled (std 1) so it maps to all zeros.

    Returns:
        (Z, t, input_standardization, target_scaling)

    Raises:
        DegenerateInputError: A feature column has zero spread
    """
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    for j, s in enumerate(std):
        if not s > 0:
            name = column_names[j] if column_names is not None else f"column {j}"
            raise DegenerateInputError(f"Feature {name} is constant across training rows")

    y_mean = float(y.mean())
    y_std = float(y.std())
    if not y_std > 0:
        y_std = 1.0

    input_standardization = Standardization(mean, std)
    target_scaling = TargetScaling(y_mean, y_std)
    return (X - mean) / std, (y - y_mean) / y_std, input_standardization, target_scaling


class BaseLearner(ABC):
    """
    Abstract base class for the boosting regressors.

    Each learner turns an n x m score matrix and n subjective scores into an
    immutable model exposing predict_many(X).
    """

    name: str = ""

    @abstractmethod
    def fit(self, X, y, seed: int = 0) -> Any:
        """
        Train on raw estimator scores.

        Args:
            X: n x m training scores
            y: n subjective scores
            seed: Seed for any random initialization

        Returns:
            Trained model (NNModel or SVRModel)
        """
        pass

    @abstractmethod
    def hyperparameters(self) -> Dict[str, Any]:
        """Settings echoed into report provenance."""
        pass

    def __repr__(self) -> str:
        settings = ", ".join(f"{k}={v}" for k, v in self.hyperparameters().items())
        return f"{type(self).__name__}({settings})"
