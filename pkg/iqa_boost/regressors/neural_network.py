"""
Single-hidden-layer regression network trained with Levenberg-Marquardt.

The hidden layer uses tanh and the output is linear. All weights are packed
into one parameter vector

    θ = [W1 (row-major, H x m) | b1 (H) | W2 (H) | b2]

so the trainer is an ordinary least-squares problem over θ.
"""

import logging
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import DegenerateInputError
from ..models import NNModel
from ..optim import LeastSquaresProblem, LMOptions, lm_fit
from .base import BaseLearner, check_training_data, standardize

logger = logging.getLogger(__name__)


def parameter_count(input_dim: int, hidden_dim: int) -> int:
    return hidden_dim * input_dim + 2 * hidden_dim + 1


def unpack(theta: np.ndarray, input_dim: int, hidden_dim: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    H, m = hidden_dim, input_dim
    W1 = theta[: H * m].reshape(H, m)
    b1 = theta[H * m: H * m + H]
    W2 = theta[H * m + H: H * m + 2 * H]
    return W1, b1, W2, float(theta[-1])


def initial_parameters(input_dim: int, hidden_dim: int, seed: int) -> np.ndarray:
    """Uniform in ±1/sqrt(fan_in) per layer, drawn from a Philox stream."""
    rng = np.random.Generator(np.random.Philox(seed))
    a1 = 1.0 / np.sqrt(input_dim)
    a2 = 1.0 / np.sqrt(hidden_dim)
    return np.concatenate(
        [
            rng.uniform(-a1, a1, size=hidden_dim * input_dim),
            rng.uniform(-a1, a1, size=hidden_dim),
            rng.uniform(-a2, a2, size=hidden_dim),
            rng.uniform(-a2, a2, size=1),
        ]
    )


def _forward(theta: np.ndarray, Z: np.ndarray, hidden_dim: int) -> Tuple[np.ndarray, np.ndarray]:
    W1, b1, W2, b2 = unpack(theta, Z.shape[1], hidden_dim)
    hidden = np.tanh(Z @ W1.T + b1)
    return hidden, hidden @ W2 + b2


def _jacobian(theta: np.ndarray, Z: np.ndarray, hidden_dim: int) -> np.ndarray:
    n, m = Z.shape
    _, _, W2, _ = unpack(theta, m, hidden_dim)
    hidden, _ = _forward(theta, Z, hidden_dim)
    d_pre = (1.0 - hidden ** 2) * W2  # d out / d pre-activation, n x H
    return np.hstack(
        [
            (d_pre[:, :, None] * Z[:, None, :]).reshape(n, hidden_dim * m),
            d_pre,
            hidden,
            np.ones((n, 1)),
        ]
    )


def train_nn(
    X,
    y,
    hidden_dim: int,
    seed: int,
    options: LMOptions = LMOptions(),
    column_names: Optional[Sequence[str]] = None,
) -> NNModel:
    """
    Fit the network to (X, y) by minimizing the squared error in standardized units.

    Args:
        X: n x m raw estimator scores
        y: n subjective scores
        hidden_dim: Hidden layer width
        seed: Initialization seed
        options: LM schedule
        column_names: Used in error messages for constant columns

    Raises:
        DegenerateInputError: n <= m, or a constant feature column
        NumericError: propagated from the optimizer
    """
    X, y = check_training_data(X, y)
    n, m = X.shape
    if hidden_dim < 1:
        raise ValueError("hidden_dim must be >= 1")
    if n < m + 1:
        raise DegenerateInputError(f"Need at least {m + 1} training rows for {m} inputs, got {n}")

    Z, t, input_standardization, target_scaling = standardize(X, y, column_names)

    problem = LeastSquaresProblem(
        residual_fn=lambda theta: _forward(theta, Z, hidden_dim)[1] - t,
        jacobian_fn=lambda theta: _jacobian(theta, Z, hidden_dim),
        theta0=initial_parameters(m, hidden_dim, seed),
    )
    result = lm_fit(problem, options)
    logger.debug(
        "NN m=%d H=%d n=%d: %s after %d iterations, mse=%.3g",
        m, hidden_dim, n, result.status, result.iterations, 2.0 * result.final_cost / n,
    )

    W1, b1, W2, b2 = unpack(result.theta, m, hidden_dim)
    return NNModel(W1, b1, W2, b2, input_standardization, target_scaling)


def predict_nn(model: NNModel, x) -> float:
    """Prediction for one score vector of length input_dim."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        x = x.ravel()
    return float(model.predict_many(x)[0])


class NNLearner(BaseLearner):
    """Neural-network booster with a fixed hidden width."""

    name = "nn"

    def __init__(self, hidden_dim: int, options: LMOptions = LMOptions()):
        """
        Args:
            hidden_dim: Hidden width (the registry size unless overridden)
            options: LM schedule used for every fit
        """
        self.hidden_dim = hidden_dim
        self.options = options

    def fit(self, X, y, seed: int = 0) -> NNModel:
        return train_nn(X, y, self.hidden_dim, seed, self.options)

    def hyperparameters(self) -> Dict[str, Any]:
        return {"hidden_dim": self.hidden_dim, "activation": "tanh", "lm": self.options.to_dict()}
