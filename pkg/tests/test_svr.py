"""Tests for the SMO-trained linear SVR.

Run directly (no pytest needed):
    python -m tests.test_svr
"""

import tempfile
from pathlib import Path

import numpy as np

from iqa_boost.exceptions import ConvergenceError, DegenerateInputError
from iqa_boost.regressors import (
    SVRLearner,
    dual_objective,
    kkt_violations,
    load_model,
    predict_svr,
    save_model,
    solve_svr_dual,
    train_svr,
)


def _grid_minimum(Z: np.ndarray, t: np.ndarray, C: float, epsilon: float, step: float) -> float:
    """Brute-force dual minimum over β with Σβ = 0 and |β| <= C (four rows)."""
    axis = np.round(np.arange(-C, C + step / 2, step), 10)
    b1, b2, b3 = np.meshgrid(axis, axis, axis, indexing="ij")
    beta = np.stack([b1.ravel(), b2.ravel(), b3.ravel()], axis=1)
    beta = np.column_stack([beta, -beta.sum(axis=1)])
    beta = beta[np.abs(beta[:, 3]) <= C + 1e-12]
    v = beta @ Z
    objective = 0.5 * np.sum(v * v, axis=1) + epsilon * np.sum(np.abs(beta), axis=1) - beta @ t
    return float(objective.min())


def _data(n: int = 60, seed: int = 0):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 3))
    y = 40.0 + 6.0 * X[:, 0] - 3.0 * X[:, 1] + rng.normal(0, 2.0, n)
    return X, y


def test_smo_matches_brute_force_dual_minimum():
    for seed in range(3):
        rng = np.random.default_rng(seed)
        Z = rng.normal(size=(4, 2))
        t = rng.normal(size=4)
        solution = solve_svr_dual(Z, t, C=0.5, epsilon=0.1, tol=1e-6)
        ours = dual_objective(solution.alpha, Z, t, 0.1)
        grid = _grid_minimum(Z, t, C=0.5, epsilon=0.1, step=0.01)
        assert ours <= grid + 1e-6, (seed, ours, grid)
        assert grid - ours < 0.02, (seed, ours, grid)
        assert abs(np.sum(solution.beta)) < 1e-12
        assert np.all(solution.alpha >= 0) and np.all(solution.alpha <= 0.5)


def test_smo_matches_grid_on_one_dimensional_instances():
    for seed in range(20):
        rng = np.random.default_rng(100 + seed)
        Z = rng.normal(size=(4, 1))
        t = rng.normal(size=4)
        solution = solve_svr_dual(Z, t, C=0.5, epsilon=0.1, tol=1e-6)
        ours = dual_objective(solution.alpha, Z, t, 0.1)
        grid = _grid_minimum(Z, t, C=0.5, epsilon=0.1, step=0.01)
        assert ours <= grid + 1e-6, (seed, ours, grid)
        assert grid - ours < 1e-3, (seed, ours, grid)


def test_exact_line_is_recovered_and_extrapolated():
    X = np.array([[-2.0], [-1.0], [0.0], [1.0], [2.0]])
    y = 2.0 * X[:, 0]
    model = train_svr(X, y, C=100.0, epsilon=0.0)
    assert abs(model.w[0] - 1.0) < 1e-2
    assert abs(predict_svr(model, [3.0]) - 6.0) < 0.05


def test_constant_target_gives_zero_weights():
    X, _ = _data()
    model = train_svr(X, np.full(len(X), 7.0))
    assert np.all(model.w == 0.0) and model.b == 0.0
    assert predict_svr(model, [1.0, 2.0, 3.0]) == 7.0


def test_prediction_matches_dot_product():
    X, y = _data()
    model = train_svr(X, y)
    x = np.array([0.5, -0.25, 2.0])
    z = (x - model.input_standardization.mean) / model.input_standardization.std
    expected = (float(np.dot(model.w, z)) + model.b) * model.target_scaling.std + model.target_scaling.mean
    assert abs(predict_svr(model, x) - expected) < 1e-12


def test_trained_model_passes_kkt_audit():
    X, y = _data()
    model = train_svr(X, y, C=1.0, epsilon=0.1)
    assert model.kkt_violation <= 1e-3
    assert 0 < model.support_vectors <= len(y)


def test_solution_satisfies_kkt_conditions_directly():
    rng = np.random.default_rng(4)
    Z = rng.normal(size=(30, 2))
    t = Z @ np.array([0.8, -0.4]) + rng.normal(0, 0.3, 30)
    solution = solve_svr_dual(Z, t, C=1.0, epsilon=0.1, tol=1e-6)
    assert np.max(kkt_violations(solution.alpha, Z, t, solution.b, 1.0, 0.1)) < 1e-5
    assert np.allclose(solution.w, Z.T @ solution.beta)


def test_wide_tube_gives_flat_model():
    X, y = _data()
    model = train_svr(X, y, epsilon=10.0)
    assert np.all(model.w == 0.0)
    assert model.support_vectors == 0
    predictions = model.predict_many(X)
    assert np.all(predictions == predictions[0])


def test_recovers_linear_trend():
    X, y = _data(200, seed=2)
    model = train_svr(X, y, C=10.0, epsilon=0.05)
    rmse = float(np.sqrt(np.mean((model.predict_many(X) - y) ** 2)))
    assert rmse < 2.5, rmse
    assert predict_svr(model, X[0]) == model.predict_many(X)[0]


def test_exhausted_budget_raises_convergence_error():
    X, y = _data()
    raised = None
    try:
        solve_svr_dual((X - X.mean(0)) / X.std(0), (y - y.mean()) / y.std(), 1.0, 0.1, tol=1e-9, max_iter=3)
    except ConvergenceError as e:
        raised = e
    assert raised is not None
    assert raised.worst_violation > 0


def test_bad_inputs_are_rejected():
    X, y = _data()
    for kwargs, error in ((dict(C=0.0), ValueError), (dict(epsilon=-1.0), ValueError)):
        raised = False
        try:
            train_svr(X, y, **kwargs)
        except error:
            raised = True
        assert raised, kwargs
    raised = False
    try:
        train_svr(X[:1], y[:1])
    except DegenerateInputError:
        raised = True
    assert raised


def test_saved_model_reloads_bit_identical():
    X, y = _data()
    model = SVRLearner(C=2.0).fit(X, y)
    path = Path(tempfile.mkdtemp()) / "svr.json"
    save_model(model, path)
    loaded = load_model(path)
    assert np.array_equal(loaded.w, model.w)
    assert loaded.b == model.b
    assert loaded.C == 2.0
    assert np.array_equal(loaded.predict_many(X), model.predict_many(X))


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
