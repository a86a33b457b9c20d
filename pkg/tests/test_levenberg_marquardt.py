"""Tests for the Levenberg-Marquardt minimizer.

Run directly (no pytest needed):
    python -m tests.test_levenberg_marquardt
"""

import numpy as np

from iqa_boost.exceptions import NumericError
from iqa_boost.optim import LeastSquaresProblem, LMOptions, lm_fit
from iqa_boost.optim.levenberg_marquardt import CONVERGED_GRADIENT, MAX_ITERS


def _linear_problem(seed: int = 0, p: int = 4) -> tuple:
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(30, p))
    b = rng.normal(size=30)
    problem = LeastSquaresProblem(lambda th: A @ th - b, lambda th: A, np.zeros(p))
    return problem, A, b


def _rosenbrock() -> LeastSquaresProblem:
    return LeastSquaresProblem(
        residual_fn=lambda th: np.array([10.0 * (th[1] - th[0] ** 2), 1.0 - th[0]]),
        jacobian_fn=lambda th: np.array([[-20.0 * th[0], 10.0], [-1.0, 0.0]]),
        theta0=np.array([-1.2, 1.0]),
    )


def test_linear_least_squares_matches_lstsq():
    for seed in range(20):
        problem, A, b = _linear_problem(seed, p=1 + seed % 10)
        result = lm_fit(problem)
        expected = np.linalg.lstsq(A, b, rcond=None)[0]
        assert np.max(np.abs(result.theta - expected)) < 1e-8, seed
        assert result.converged


def test_rosenbrock_converges_to_its_minimum():
    result = lm_fit(_rosenbrock())
    assert np.allclose(result.theta, [1.0, 1.0], atol=1e-6)
    assert result.final_cost < 1e-12
    assert result.converged


def test_cost_history_never_increases():
    result = lm_fit(_rosenbrock())
    history = np.array(result.cost_history)
    assert abs(history[0] - (0.5 * (10.0 * (1.0 - 1.44)) ** 2 + 0.5 * 2.2 ** 2)) < 1e-9
    assert np.all(np.diff(history) < 0)


def test_start_at_optimum_returns_immediately():
    problem = LeastSquaresProblem(lambda th: th - 3.0, lambda th: np.eye(2), np.array([3.0, 3.0]))
    result = lm_fit(problem)
    assert result.status == CONVERGED_GRADIENT
    assert result.iterations == 0
    assert result.final_cost <= 1e-20
    assert np.array_equal(result.theta, [3.0, 3.0])


def test_iteration_budget_is_respected():
    result = lm_fit(_rosenbrock(), LMOptions(max_iters=2))
    assert result.status == MAX_ITERS
    assert result.iterations == 2


def test_non_finite_residual_raises_with_theta():
    problem = LeastSquaresProblem(lambda th: np.array([np.log(th[0])]), lambda th: np.array([[1.0 / th[0]]]),
                                  np.array([-1.0]))
    raised = None
    with np.errstate(invalid="ignore"):
        try:
            lm_fit(problem)
        except NumericError as e:
            raised = e
    assert raised is not None
    assert raised.theta == [-1.0]


def test_residual_order_does_not_change_the_minimum():
    rng = np.random.default_rng(3)
    x = np.linspace(-2, 2, 40)
    y = 1.5 * np.exp(-0.7 * x) + rng.normal(0, 0.05, 40)
    perm = rng.permutation(40)

    def problem(order):
        xs, ys = x[order], y[order]
        return LeastSquaresProblem(
            lambda th: th[0] * np.exp(th[1] * xs) - ys,
            lambda th: np.column_stack([np.exp(th[1] * xs), th[0] * xs * np.exp(th[1] * xs)]),
            np.array([1.0, 0.0]),
        )

    a = lm_fit(problem(np.arange(40)))
    b = lm_fit(problem(perm))
    assert abs(a.final_cost - b.final_cost) < 1e-10


def test_fit_is_deterministic():
    a, b = lm_fit(_rosenbrock()), lm_fit(_rosenbrock())
    assert np.array_equal(a.theta, b.theta)
    assert a.cost_history == b.cost_history


def test_options_are_validated():
    for bad in (dict(lambda0=0), dict(lambda_up=1.0), dict(lambda_down=1.0), dict(max_iters=0), dict(grad_tol=0)):
        raised = False
        try:
            LMOptions(**bad)
        except ValueError:
            raised = True
        assert raised, bad


if __name__ == "__main__":
    import sys

    failures = 0
    for _name, _fn in sorted(globals().items()):
        if _name.startswith("test_") and callable(_fn):
            try:
                _fn()
                print(f"PASS {_name}")
            except AssertionError as exc:
                failures += 1
                print(f"FAIL {_name}: {exc}")
            except Exception as exc:
                failures += 1
                print(f"ERROR {_name}: {type(exc).__name__}: {exc}")
    print(f"\n{failures} failure(s)")
    sys.exit(1 if failures else 0)
