"""Tests for RMSE, PLCC, SRCC and the Fisher-z significance test.

Run directly (no pytest needed):
    python -m tests.test_criteria
"""

import math

import numpy as np
from scipy.stats import spearmanr

from iqa_boost.evaluation import evaluate_criteria, plcc, rmse, significance_diff, significance_threshold, srcc
from iqa_boost.evaluation.significance import critical_value, z_statistic
from iqa_boost.exceptions import DegenerateInputError, ShapeError


def test_rmse_closed_form():
    assert rmse([1, 2, 3], [1, 2, 3]) == 0.0
    assert abs(rmse([0, 0, 0, 0], [1, -1, 1, -1]) - 1.0) < 1e-15
    assert abs(rmse([0, 0], [3, 4]) - math.sqrt(12.5)) < 1e-12


def test_plcc_matches_numpy():
    rng = np.random.default_rng(0)
    for _ in range(5):
        x = rng.normal(size=50)
        y = 0.4 * x + rng.normal(size=50)
        assert abs(plcc(x, y) - np.corrcoef(x, y)[0, 1]) < 1e-12
    assert plcc([1, 2, 3], [2, 4, 6]) == 1.0
    assert plcc([1, 2, 3], [3, 2, 1]) == -1.0


def test_srcc_uses_average_ranks_for_ties():
    rng = np.random.default_rng(1)
    x = rng.integers(0, 5, size=40).astype(float)
    y = x + rng.integers(0, 3, size=40)
    assert abs(srcc(x, y) - spearmanr(x, y)[0]) < 1e-12
    assert srcc([1, 2, 3, 4], [10, 20, 30, 1000]) == 1.0


def test_srcc_matches_rank_difference_formula_without_ties():
    rng = np.random.default_rng(2)
    n = 50
    for _ in range(1000):
        x = rng.permutation(n).astype(float)
        y = rng.permutation(n).astype(float)
        d = x - y
        expected = 1.0 - 6.0 * float(d @ d) / (n * (n * n - 1))
        assert abs(srcc(x, y) - expected) < 1e-12
    assert srcc([1, 2, 3], [3, 2, 1]) == -1.0


def test_rank_and_affine_invariances():
    rng = np.random.default_rng(5)
    x = rng.normal(size=60)
    y = x + rng.normal(size=60)
    assert srcc(np.exp(x), y ** 3) == srcc(x, y)
    assert abs(plcc(-3.0 * x + 7.0, y) + plcc(x, y)) < 1e-12
    assert abs(plcc(2 * np.arange(5.0) + 1, np.arange(5.0)) - 1.0) < 1e-12
    assert abs(rmse([1, 2], [1, 4]) - math.sqrt(2)) < 1e-15


def test_rmse_is_a_metric_on_random_triples():
    rng = np.random.default_rng(8)
    for _ in range(50):
        a, b, c = rng.normal(size=(3, 20))
        assert rmse(a, b) == rmse(b, a)
        assert rmse(a, c) <= rmse(a, b) + rmse(b, c) + 1e-12


def test_constant_input_is_degenerate():
    for fn in (plcc, srcc):
        raised = False
        try:
            fn([1, 1, 1, 1], [1, 2, 3, 4])
        except DegenerateInputError:
            raised = True
        assert raised, fn.__name__


def test_short_or_mismatched_inputs():
    raised = False
    try:
        plcc([1, 2], [1, 2])
    except DegenerateInputError:
        raised = True
    assert raised
    raised = False
    try:
        rmse([1, 2, 3], [1, 2])
    except ShapeError:
        raised = True
    assert raised


def test_evaluate_criteria_uses_raw_scores_for_srcc():
    subjective = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    mapped = np.array([1.1, 1.9, 3.2, 3.9, 5.0])
    raw = -mapped
    result = evaluate_criteria(mapped, raw, subjective)
    assert result.n == 5
    assert result.srcc == -1.0
    assert result.plcc > 0.99
    assert abs(result.rmse - rmse(mapped, subjective)) < 1e-15


def test_two_samples_have_rmse_only():
    result = evaluate_criteria([1.0, 2.0], [1.0, 2.0], [1.5, 2.5])
    assert result.plcc is None and result.srcc is None
    assert result.rmse == 0.5


def test_fisher_z_statistic():
    expected = (math.atanh(0.9) - math.atanh(0.8)) / math.sqrt(2.0 / 97)
    assert abs(z_statistic(0.9, 0.8, 100) - expected) < 1e-12
    significant, statistic = significance_diff(0.9, 0.8, 100)
    assert statistic == z_statistic(0.9, 0.8, 100)
    assert significant == (abs(expected) > 1.959963984540054)
    assert abs(critical_value(0.05) - 1.959963984540054) < 1e-12


def test_equal_correlations_are_never_significant():
    for r in (-0.5, 0.0, 0.3, 0.95):
        significant, statistic = significance_diff(r, r, 500)
        assert not significant and statistic == 0.0


def test_significance_decisions():
    assert significance_diff(0.95, 0.50, 200)[0]
    assert not significance_diff(0.90, 0.89, 30)[0]
    z12 = significance_diff(0.7, 0.6, 50)[1]
    assert significance_diff(0.6, 0.7, 50)[1] == -z12


def test_threshold_closed_form_and_monotonicity():
    n = 10000
    expected = math.tanh(critical_value(0.05) * math.sqrt(2.0 / (n - 3)))
    assert abs(significance_threshold(0.0, n) - expected) < 1e-4
    assert significance_threshold(0.8, 200, alpha=0.01) > significance_threshold(0.8, 200, alpha=0.05)
    assert significance_threshold(0.8, 400) < significance_threshold(0.8, 200)
    threshold = significance_threshold(0.8, 200)
    assert significance_diff(threshold + 1e-4, 0.8, 200)[0]
    assert not significance_diff(threshold - 1e-4, 0.8, 200)[0]


def test_threshold_is_where_the_decision_flips():
    for r_base, n in ((0.8, 100), (0.5, 40), (0.9, 625)):
        threshold = significance_threshold(r_base, n)
        assert r_base < threshold < 1.0
        assert significance_diff(threshold + 1e-9, r_base, n)[0]
        assert not significance_diff(threshold - 1e-9, r_base, n)[0]


def test_degenerate_significance_inputs():
    for args in ((0.5, 0.4, 3), (1.0, 0.4, 100), (0.5, -1.0, 100)):
        raised = False
        try:
            significance_diff(*args)
        except DegenerateInputError:
            raised = True
        assert raised, args
    raised = False
    try:
        significance_threshold(0.5, 3)
    except DegenerateInputError:
        raised = True
    assert raised


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
