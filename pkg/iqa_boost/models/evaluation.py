"""
Evaluation-protocol models: logistic mapping, fold plans and criteria.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np


class Criterion(Enum):
    """The three performance criteria and their polarity."""

    RMSE = "RMSE"
    PLCC = "PLCC"
    SRCC = "SRCC"

    @property
    def lower_is_better(self) -> bool:
        return self is Criterion.RMSE

    @property
    def is_correlation(self) -> bool:
        return self is not Criterion.RMSE

    @property
    def title(self) -> str:
        return {
            Criterion.RMSE: "Root Mean Square Error",
            Criterion.PLCC: "Pearson Correlation Coefficient",
            Criterion.SRCC: "Spearman Correlation Coefficient",
        }[self]


CRITERIA: Tuple[Criterion, ...] = (Criterion.RMSE, Criterion.PLCC, Criterion.SRCC)


@dataclass(frozen=True)
class LogisticFit:
    """Five logistic-mapping parameters beta1..beta5."""

    beta: Tuple[float, float, float, float, float]
    final_cost: float = 0.0

    def __post_init__(self) -> None:
        beta = tuple(float(b) for b in self.beta)
        if len(beta) != 5:
            raise ValueError(f"LogisticFit needs five parameters, got {len(beta)}")
        if not all(math.isfinite(b) for b in beta):
            raise ValueError("LogisticFit parameters must be finite")
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class FoldPlan:
    """
    Seeded assignment of n stimuli to k folds for one run.

    Attributes:
        run_index: Run this plan belongs to
        seed: Seed the shuffle was drawn from
        assignment: Fold label per stimulus index
        k: Number of folds
    """

    run_index: int
    seed: int
    assignment: Tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(int(a) for a in self.assignment))
        if self.k < 2:
            raise ValueError("FoldPlan.k must be >= 2")
        if any(a < 0 or a >= self.k for a in self.assignment):
            raise ValueError("FoldPlan labels must lie in 0..k-1")
        sizes = self.fold_sizes()
        if max(sizes) - min(sizes) > 1:
            raise ValueError(f"FoldPlan fold sizes differ by more than one: {sizes}")

    @property
    def n(self) -> int:
        return len(self.assignment)

    def fold_sizes(self) -> List[int]:
        counts = [0] * self.k
        for a in self.assignment:
            counts[a] += 1
        return counts

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.assignment) == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.assignment) != fold)


@dataclass(frozen=True)
class CriterionResult:
    """RMSE / PLCC / SRCC of one set of predictions."""

    rmse: float
    plcc: Optional[float]
    srcc: Optional[float]
    n: int

    def __post_init__(self) -> None:
        if self.rmse < 0:
            raise ValueError("rmse must be non-negative")
        for name in ("plcc", "srcc"):
            value = getattr(self, name)
            if value is not None and not -1.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [-1, 1], got {value}")
        if self.n < 3 and (self.plcc is not None or self.srcc is not None):
            raise ValueError("correlations need at least three samples")

    def value(self, criterion: Criterion) -> Optional[float]:
        return {
            Criterion.RMSE: self.rmse,
            Criterion.PLCC: self.plcc,
            Criterion.SRCC: self.srcc,
        }[criterion]
