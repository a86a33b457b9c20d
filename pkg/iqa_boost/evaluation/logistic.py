"""
Five-parameter logistic mapping between objective and subjective scores.

    V = β1 (½ - 1 / (1 + exp(β2 (V0 - β3)))) + β4 V0 + β5

The fit runs in z-scored units (both axes) for conditioning and the
parameters are converted back, so callers always see raw-unit β values.
"""

import logging
from typing import List, Tuple, Union

import numpy as np

from ..exceptions import DegenerateInputError, IQABoostError, ShapeError
from ..models import LogisticFit
from ..optim import LeastSquaresProblem, LMOptions, lm_fit

logger = logging.getLogger(__name__)

MIN_SAMPLES = 5

IDENTITY_FIT = LogisticFit((0.0, 0.0, 0.0, 1.0, 0.0))


def _logistic_term(v0: np.ndarray, b2: float, b3: float) -> np.ndarray:
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + np.exp(b2 * (v0 - b3)))


def logistic_curve(beta, v0) -> np.ndarray:
    b1, b2, b3, b4, b5 = beta
    return b1 * (0.5 - _logistic_term(v0, b2, b3)) + b4 * v0 + b5


def _curve_jacobian(beta, v0: np.ndarray) -> np.ndarray:
    b1, b2, b3, _, _ = beta
    s = _logistic_term(v0, b2, b3)
    slope = b1 * s * (1.0 - s)
    return np.column_stack([0.5 - s, slope * (v0 - b3), -slope * b2, v0, np.ones_like(v0)])


def apply_logistic_map(fit: LogisticFit, v0) -> Union[float, np.ndarray]:
    """Evaluate the fitted mapping at a score or an array of scores."""
    values = logistic_curve(fit.beta, np.asarray(v0, dtype=np.float64))
    return float(values) if np.ndim(values) == 0 else values


def _starts(u: np.ndarray, v: np.ndarray, u_std: float, v_std: float, shift: float) -> List[np.ndarray]:
    """Initial points in standardized units."""
    slope = float(np.mean(u * v) / np.mean(u * u))
    v_range = float(v.max() - v.min())
    starts = [
        np.array([v_range, b2, b3, slope, 0.0])
        for b3 in (float(u.min()), float(np.median(u)), float(u.max()))
        for b2 in (1.0, -1.0)
    ]
    # identity mapping V = V0 expressed in standardized units
    starts.append(np.array([0.0, 1.0, 0.0, u_std / v_std, shift]))
    # least-squares line
    starts.append(np.array([0.0, 1.0, 0.0, slope, 0.0]))
    return starts


def fit_logistic_map(
    objective, subjective, options: LMOptions = LMOptions()
) -> LogisticFit:
    """
    Fit the five-parameter mapping from objective to subjective scores.

    Every start of the multi-start set is refined with lm_fit and the lowest
    final cost wins. Starts that fail numerically are skipped.

    Raises:
        DegenerateInputError: fewer than MIN_SAMPLES points or constant objective
        ShapeError: length mismatch
    """
    x = np.asarray(objective, dtype=np.float64).ravel()
    y = np.asarray(subjective, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise ShapeError(f"objective has {x.size} values, subjective {y.size}")
    if x.size < MIN_SAMPLES:
        raise DegenerateInputError(f"Logistic fit needs at least {MIN_SAMPLES} points, got {x.size}")
    x_mean, x_std = float(x.mean()), float(x.std())
    if not x_std > 0:
        raise DegenerateInputError("Objective scores are constant; the mapping is undefined")
    y_mean, y_std = float(y.mean()), float(y.std())
    if not y_std > 0:
        y_std = 1.0

    u = (x - x_mean) / x_std
    v = (y - y_mean) / y_std

    best_theta, best_cost = None, np.inf
    for theta0 in _starts(u, v, x_std, y_std, (x_mean - y_mean) / y_std):
        problem = LeastSquaresProblem(
            residual_fn=lambda a: logistic_curve(a, u) - v,
            jacobian_fn=lambda a: _curve_jacobian(a, u),
            theta0=theta0,
        )
        try:
            result = lm_fit(problem, options)
        except IQABoostError as e:
            logger.debug("Logistic start %s skipped: %s", theta0, e)
            continue
        if result.final_cost < best_cost:
            best_theta, best_cost = result.theta, result.final_cost

    if best_theta is None:
        raise DegenerateInputError("Every logistic start failed")

    beta = to_raw_units(best_theta, x_mean, x_std, y_mean, y_std)
    residual = logistic_curve(beta, x) - y
    return LogisticFit(beta, final_cost=0.5 * float(residual @ residual))


def to_raw_units(
    a, x_mean: float, x_std: float, y_mean: float, y_std: float
) -> Tuple[float, float, float, float, float]:
    """Convert standardized-unit parameters to raw-unit β."""
    a1, a2, a3, a4, a5 = (float(value) for value in a)
    return (
        y_std * a1,
        a2 / x_std,
        x_mean + x_std * a3,
        y_std * a4 / x_std,
        y_mean + y_std * a5 - y_std * a4 * x_mean / x_std,
    )
