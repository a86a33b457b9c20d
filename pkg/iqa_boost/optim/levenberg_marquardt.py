"""
Damped Gauss-Newton (Levenberg-Marquardt) minimizer for ½‖r(θ)‖².

Shared by the neural-network trainer and the logistic mapping fit. Each
iteration solves

    (JᵀJ + λI) Δ = −Jᵀr

with a Cholesky factorization; a step is accepted only when it lowers the
cost (λ shrinks), otherwise it is rejected and λ grows.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..exceptions import NumericError

logger = logging.getLogger(__name__)

# Damping above this value means the normal equations are hopeless.
LAMBDA_MAX = 1e16

CONVERGED_GRADIENT = "converged-gradient"
CONVERGED_STEP = "converged-step"
MAX_ITERS = "max-iters"
LAMBDA_OVERFLOW = "lambda-overflow"

ResidualFn = Callable[[np.ndarray], np.ndarray]
JacobianFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class LeastSquaresProblem:
    """
    Residuals r(θ) (length n), their n x p Jacobian, and a starting point.
    """

    residual_fn: ResidualFn
    jacobian_fn: JacobianFn
    theta0: np.ndarray

    def __post_init__(self) -> None:
        theta0 = np.array(self.theta0, dtype=np.float64).ravel()
        if theta0.size == 0:
            raise ValueError("theta0 must have at least one parameter")
        object.__setattr__(self, "theta0", theta0)


@dataclass(frozen=True)
class LMOptions:
    lambda0: float = 1e-3
    lambda_up: float = 10.0
    lambda_down: float = 0.1
    max_iters: int = 200
    grad_tol: float = 1e-8
    step_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.lambda0 <= 0:
            raise ValueError("lambda0 must be positive")
        if self.lambda_up <= 1:
            raise ValueError("lambda_up must exceed 1")
        if not 0 < self.lambda_down < 1:
            raise ValueError("lambda_down must lie in (0, 1)")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.grad_tol <= 0 or self.step_tol <= 0:
            raise ValueError("grad_tol and step_tol must be positive")

    def to_dict(self) -> dict:
        return {
            "lambda0": self.lambda0,
            "lambda_up": self.lambda_up,
            "lambda_down": self.lambda_down,
            "max_iters": self.max_iters,
            "grad_tol": self.grad_tol,
            "step_tol": self.step_tol,
        }


@dataclass(frozen=True)
class LMResult:
    """
    Attributes:
        theta: Final parameters
        final_cost: ½‖r(theta)‖²
        iterations: Attempted steps (accepted and rejected)
        status: One of converged-gradient, converged-step, max-iters, lambda-overflow
        cost_history: Initial cost followed by the cost after each accepted step
    """

    theta: np.ndarray
    final_cost: float
    iterations: int
    status: str
    cost_history: Tuple[float, ...] = field(default=())

    @property
    def converged(self) -> bool:
        return self.status in (CONVERGED_GRADIENT, CONVERGED_STEP)


def _residual(problem: LeastSquaresProblem, theta: np.ndarray) -> np.ndarray:
    r = np.asarray(problem.residual_fn(theta), dtype=np.float64).ravel()
    if not np.all(np.isfinite(r)):
        raise NumericError("Residual is not finite", theta=theta)
    return r


def _jacobian(problem: LeastSquaresProblem, theta: np.ndarray, n: int) -> np.ndarray:
    J = np.asarray(problem.jacobian_fn(theta), dtype=np.float64).reshape(n, theta.size)
    if not np.all(np.isfinite(J)):
        raise NumericError("Jacobian is not finite", theta=theta)
    return J


def lm_fit(problem: LeastSquaresProblem, opts: LMOptions = LMOptions()) -> LMResult:
    """
    Minimize ½‖r(θ)‖² from problem.theta0.

    Deterministic: the same problem and options always give the same result.

    Raises:
        NumericError: residual or Jacobian became non-finite (carries θ)
    """
    theta = problem.theta0.copy()
    r = _residual(problem, theta)
    J = _jacobian(problem, theta, r.size)
    cost = 0.5 * float(r @ r)
    history = [cost]
    lam = opts.lambda0
    identity = np.eye(theta.size)
    status = MAX_ITERS
    iterations = 0

    while iterations < opts.max_iters:
        g = J.T @ r
        if np.max(np.abs(g)) <= opts.grad_tol:
            status = CONVERGED_GRADIENT
            break
        iterations += 1

        try:
            factor = cho_factor(J.T @ J + lam * identity, check_finite=False)
            delta = -cho_solve(factor, g, check_finite=False)
        except LinAlgError:
            lam *= opts.lambda_up
            if lam > LAMBDA_MAX:
                status = LAMBDA_OVERFLOW
                break
            continue

        small_step = np.linalg.norm(delta) <= opts.step_tol * (np.linalg.norm(theta) + opts.step_tol)
        trial = theta + delta
        r_trial = _residual(problem, trial)
        cost_trial = 0.5 * float(r_trial @ r_trial)

        if cost_trial < cost:
            theta, r, cost = trial, r_trial, cost_trial
            J = _jacobian(problem, theta, r.size)
            history.append(cost)
            lam *= opts.lambda_down
            if small_step:
                status = CONVERGED_STEP
                break
        else:
            if small_step:
                status = CONVERGED_STEP
                break
            lam *= opts.lambda_up
            if lam > LAMBDA_MAX:
                status = LAMBDA_OVERFLOW
                break

    logger.debug("LM stopped after %d iterations: %s (cost %.6g)", iterations, status, cost)
    return LMResult(theta, cost, iterations, status, tuple(history))
