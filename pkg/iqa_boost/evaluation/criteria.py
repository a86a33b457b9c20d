"""
Accuracy, linearity and ranking criteria.
"""

import math
from typing import Tuple

import numpy as np
from scipy.stats import rankdata

from ..exceptions import DegenerateInputError, ShapeError
from ..models import CriterionResult


def _pair(x, y, min_n: int) -> Tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise ShapeError(f"Length mismatch: {x.size} vs {y.size}")
    if x.size < min_n:
        raise DegenerateInputError(f"Need at least {min_n} samples, got {x.size}")
    return x, y


def rmse(x, y) -> float:
    x, y = _pair(x, y, 1)
    return math.sqrt(float(np.mean((x - y) ** 2)))


def plcc(x, y) -> float:
    """Pearson linear correlation, clamped to [-1, 1]."""
    x, y = _pair(x, y, 3)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInputError("Pearson correlation is undefined for constant input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def srcc(x, y) -> float:
    """Spearman rank correlation: Pearson correlation of average ranks."""
    x, y = _pair(x, y, 3)
    return plcc(rankdata(x, method="average"), rankdata(y, method="average"))


def evaluate_criteria(mapped, raw, subjective) -> CriterionResult:
    """
    All three criteria for one set of predictions.

    Args:
        mapped: Predictions after the logistic mapping (RMSE, PLCC)
        raw: Predictions before mapping (SRCC, rank-invariant)
        subjective: Ground-truth scores
    """
    mapped, subjective = _pair(mapped, subjective, 1)
    raw, _ = _pair(raw, subjective, 1)
    n = subjective.size
    if n < 3:
        return CriterionResult(rmse(mapped, subjective), None, None, n)
    return CriterionResult(rmse(mapped, subjective), plcc(mapped, subjective), srcc(raw, subjective), n)
