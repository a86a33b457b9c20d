"""
Linear-kernel epsilon-SVR trained by sequential minimal optimization.

The dual is written over 2l variables, α (first half, label +1) and α*
(second half, label -1):

    min  ½ αᵀQα + pᵀα   s.t.  ŷᵀα = 0,  0 ≤ α ≤ C
    Q_ts = ŷ_t ŷ_s x_t·x_s,   p = [ε - t ; ε + t]

With a linear kernel Qα only depends on w = Σ(α_i - α*_i) x_i, so the
gradient is refreshed from w instead of a kernel cache. Working pairs use
the maximal-violating index i and the second-order choice of j; the update,
clipping and threshold rules follow the standard SMO decomposition solver.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..exceptions import ConvergenceError, DegenerateInputError
from ..models import SVRModel
from .base import BaseLearner, check_training_data, standardize

logger = logging.getLogger(__name__)

KKT_TOLERANCE = 1e-3
# Floor for a non-positive curvature along the working pair
TAU = 1e-12
# Budget is MAX_PASSES * n passes of up to n pair updates each, i.e. MAX_PASSES * n * n updates
MAX_PASSES = 10


@dataclass(frozen=True)
class SMOSolution:
    """
    Attributes:
        alpha: All 2l dual variables, α then α*
        w: Σ beta_i x_i
        b: Intercept (minus the solver threshold)
        gradient: Final dual gradient over all 2l variables
        iterations: Pair updates performed
        gap: Final maximal-violating-pair gap m(α) - M(α)
    """

    alpha: np.ndarray
    w: np.ndarray
    b: float
    gradient: np.ndarray
    iterations: int
    gap: float

    @property
    def beta(self) -> np.ndarray:
        """α - α* per training row."""
        half = self.alpha.size // 2
        return self.alpha[:half] - self.alpha[half:]


def _bounds(alpha: np.ndarray, C: float):
    return alpha >= C, alpha <= 0.0


def _threshold(alpha: np.ndarray, labels: np.ndarray, G: np.ndarray, C: float) -> float:
    """Solver threshold ρ: mean of ŷG over free variables, else the midpoint of the bounds."""
    at_upper, at_lower = _bounds(alpha, C)
    yG = labels * G
    free = ~(at_upper | at_lower)
    if np.any(free):
        return float(np.mean(yG[free]))
    ub_mask = (at_upper & (labels < 0)) | (at_lower & (labels > 0))
    lb_mask = (at_upper & (labels > 0)) | (at_lower & (labels < 0))
    if not np.any(ub_mask):
        return float(np.max(yG[lb_mask]))
    if not np.any(lb_mask):
        return float(np.min(yG[ub_mask]))
    return (float(np.min(yG[ub_mask])) + float(np.max(yG[lb_mask]))) / 2.0


def _up_low_sets(alpha: np.ndarray, labels: np.ndarray, C: float):
    at_upper, at_lower = _bounds(alpha, C)
    up = ((labels > 0) & ~at_upper) | ((labels < 0) & ~at_lower)
    low = ((labels > 0) & ~at_lower) | ((labels < 0) & ~at_upper)
    return up, low


def solve_svr_dual(
    Z: np.ndarray,
    t: np.ndarray,
    C: float,
    epsilon: float,
    tol: float = KKT_TOLERANCE,
    max_iter: Optional[int] = None,
) -> SMOSolution:
    """
    Solve the linear epsilon-SVR dual on already standardized data.

    Args:
        Z: l x m inputs
        t: l targets
        C: Box constraint
        epsilon: Tube half-width
        tol: Stop once the maximal-violating-pair gap drops below tol
        max_iter: Pair-update budget (default MAX_PASSES * l * l)

    Raises:
        ConvergenceError: budget exhausted before the gap reached tol
    """
    l, m = Z.shape
    if max_iter is None:
        max_iter = MAX_PASSES * l * l
    labels = np.concatenate([np.ones(l), -np.ones(l)])
    p = np.concatenate([epsilon - t, epsilon + t])
    alpha = np.zeros(2 * l)
    w = np.zeros(m)
    sq_norms = np.einsum("ij,ij->i", Z, Z)
    rows = np.concatenate([np.arange(l), np.arange(l)])

    iterations = 0
    gap = np.inf
    while True:
        G = labels * np.tile(Z @ w, 2) + p
        up, low = _up_low_sets(alpha, labels, C)
        minus_yG = -labels * G

        if not np.any(up) or not np.any(low):
            gap = 0.0
            break
        i = int(np.argmax(np.where(up, minus_yG, -np.inf)))
        g_max = minus_yG[i]
        g_max2 = float(np.max(np.where(low, -minus_yG, -np.inf)))
        gap = g_max + g_max2
        if gap < tol:
            break

        grad_diff = g_max - minus_yG
        candidates = low & (grad_diff > 0)
        if not np.any(candidates):
            break
        xi = Z[rows[i]]
        quad = sq_norms[rows[i]] + sq_norms[rows] - 2.0 * (Z[rows] @ xi)
        quad = np.where(quad > 0, quad, TAU)
        obj_diff = np.where(candidates, -(grad_diff ** 2) / quad, np.inf)
        j = int(np.argmin(obj_diff))

        if iterations >= max_iter:
            raise ConvergenceError(
                f"SMO did not converge in {max_iter} pair updates (KKT gap {gap:.3g})",
                worst_violation=float(gap),
            )
        iterations += 1

        old_i, old_j = alpha[i], alpha[j]
        q = quad[j]
        if labels[i] != labels[j]:
            delta = (-G[i] - G[j]) / q
            diff = alpha[i] - alpha[j]
            alpha[i] += delta
            alpha[j] += delta
            if diff > 0:
                if alpha[j] < 0:
                    alpha[j] = 0.0
                    alpha[i] = diff
            elif alpha[i] < 0:
                alpha[i] = 0.0
                alpha[j] = -diff
            if diff > 0:
                if alpha[i] > C:
                    alpha[i] = C
                    alpha[j] = C - diff
            elif alpha[j] > C:
                alpha[j] = C
                alpha[i] = C + diff
        else:
            delta = (G[i] - G[j]) / q
            total = alpha[i] + alpha[j]
            alpha[i] -= delta
            alpha[j] += delta
            if total > C:
                if alpha[i] > C:
                    alpha[i] = C
                    alpha[j] = total - C
            elif alpha[j] < 0:
                alpha[j] = 0.0
                alpha[i] = total
            if total > C:
                if alpha[j] > C:
                    alpha[j] = C
                    alpha[i] = total - C
            elif alpha[i] < 0:
                alpha[i] = 0.0
                alpha[j] = total

        w = w + (alpha[i] - old_i) * labels[i] * Z[rows[i]] + (alpha[j] - old_j) * labels[j] * Z[rows[j]]

    G = labels * np.tile(Z @ w, 2) + p
    rho = _threshold(alpha, labels, G, C)
    beta = alpha[:l] - alpha[l:]
    return SMOSolution(alpha, Z.T @ beta, -rho, G, iterations, float(max(gap, 0.0)))


def dual_objective(alpha: np.ndarray, Z: np.ndarray, t: np.ndarray, epsilon: float) -> float:
    """½ βᵀKβ + ε Σ(α + α*) - tᵀβ with β = α - α*."""
    half = alpha.size // 2
    beta = alpha[:half] - alpha[half:]
    v = Z.T @ beta
    return float(0.5 * v @ v + epsilon * np.sum(alpha) - t @ beta)


def kkt_violations(
    alpha: np.ndarray, Z: np.ndarray, t: np.ndarray, b: float, C: float, epsilon: float
) -> np.ndarray:
    """
    Per-row KKT violation of a solution with intercept b.

    With residual e = t - (Z·w + b): a variable at 0 must keep its side of the
    tube satisfied, a free variable must sit on the tube edge, and a variable
    at C must lie outside it.
    """
    half = alpha.size // 2
    alpha, alpha_star = alpha[:half], alpha[half:]
    e = t - (Z @ (Z.T @ (alpha - alpha_star)) + b)
    # first-half variables (label +1): -ŷG - b = e - ε
    upper_gap = e - epsilon
    lower_gap = -e - epsilon
    viol = np.zeros_like(e)
    for a, gap in ((alpha, upper_gap), (alpha_star, lower_gap)):
        at_lower = a <= 0.0
        at_upper = a >= C
        free = ~(at_lower | at_upper)
        viol = np.maximum(viol, np.where(at_lower, np.maximum(gap, 0.0), 0.0))
        viol = np.maximum(viol, np.where(at_upper, np.maximum(-gap, 0.0), 0.0))
        viol = np.maximum(viol, np.where(free, np.abs(gap), 0.0))
    return viol


def train_svr(
    X,
    y,
    C: float = 1.0,
    epsilon: float = 0.1,
    tol: float = KKT_TOLERANCE,
    column_names: Optional[Sequence[str]] = None,
) -> SVRModel:
    """
    Fit a linear epsilon-SVR on raw estimator scores.

    epsilon is in standardized target units.

    Raises:
        DegenerateInputError: fewer than 2 rows or a constant feature column
        NumericError: non-finite inputs
        ConvergenceError: SMO budget exhausted or the KKT audit failed
    """
    X, y = check_training_data(X, y)
    if C <= 0:
        raise ValueError("C must be positive")
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if X.shape[0] < 2:
        raise DegenerateInputError("SVR needs at least 2 training rows")

    Z, t, input_standardization, target_scaling = standardize(X, y, column_names)
    solution = solve_svr_dual(Z, t, C, epsilon, tol)

    violations = kkt_violations(solution.alpha, Z, t, solution.b, C, epsilon)
    worst = float(np.max(violations)) if violations.size else 0.0
    if worst > tol or np.max(np.abs(solution.beta)) > C:
        raise ConvergenceError(
            f"KKT audit failed: worst violation {worst:.3g} exceeds {tol:g}",
            worst_violation=worst,
        )

    support_vectors = int(np.count_nonzero(solution.beta))
    logger.debug(
        "SVR n=%d m=%d: %d pair updates, gap %.2g, %d support vectors",
        X.shape[0], X.shape[1], solution.iterations, solution.gap, support_vectors,
    )
    return SVRModel(
        w=solution.w,
        b=solution.b,
        C=C,
        epsilon=epsilon,
        input_standardization=input_standardization,
        target_scaling=target_scaling,
        kkt_violation=worst,
        support_vectors=support_vectors,
    )


def predict_svr(model: SVRModel, x) -> float:
    """Prediction for one score vector of length input_dim."""
    return float(model.predict_many(np.asarray(x, dtype=np.float64).ravel())[0])


class SVRLearner(BaseLearner):
    """Linear SVR booster."""

    name = "svr"

    def __init__(self, C: float = 1.0, epsilon: float = 0.1, tol: float = KKT_TOLERANCE):
        self.C = C
        self.epsilon = epsilon
        self.tol = tol

    def fit(self, X, y, seed: int = 0) -> SVRModel:
        # SMO with a fixed scan order is deterministic; the seed is unused
        return train_svr(X, y, self.C, self.epsilon, self.tol)

    def hyperparameters(self) -> Dict[str, Any]:
        return {"kernel": "linear", "C": self.C, "epsilon": self.epsilon, "kkt_tolerance": self.tol}
