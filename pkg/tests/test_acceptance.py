"""End-to-end checks of the boosting results on the synthetic benchmark.

The boosting check runs the full 100-run protocol and takes a few minutes.
The fusion-curve checks (monotone curve, NN above SVR) run at a reduced count:
CURVE_RUNS runs per fusion size, ordered by a RANKING_RUNS-run SVR study (20 and 5).

The LIVE check at the bottom uses 10 runs and only runs when the licensed
data is available locally:

    IQABOOST_LIVE_MANIFEST  manifest CSV of the LIVE database
    IQABOOST_LIVE_SCORES    optional score file with a PSNR column; PSNR is
                            computed from the images when it is not given

Run directly (no pytest needed):
    python -m tests.test_acceptance
"""

import os
from functools import lru_cache
from pathlib import Path

import pytest

from iqa_boost.experiments import (
    MethodSpec,
    evaluate_methods,
    fold_plans,
    make_synthetic_benchmark,
    rank_estimators,
    run_incremental_fusion_study,
    run_single_method_study,
)
from iqa_boost.metrics import assemble_score_table, build_feature_matrix, compute_native_scores
from iqa_boost.models import Criterion, ExperimentConfig
from iqa_boost.processors import ingest_external_scores, load_manifest
from iqa_boost.utils import expected_counts, load_registry
from iqa_boost.validators import category_counts

REGISTRY = ("M1", "M2", "M3", "M4", "M5")
BOOST_RUNS = 100
CURVE_RUNS = 20
RANKING_RUNS = 5


@lru_cache(maxsize=None)
def _benchmark():
    return make_synthetic_benchmark(n=500, m=5, seed=0)


@lru_cache(maxsize=None)
def _fusion_curve():
    db, table = _benchmark()
    ranking_cfg = ExperimentConfig(runs=RANKING_RUNS, k=5, registry=REGISTRY, learners=("svr",))
    ordering = rank_estimators(run_single_method_study(db, table, ranking_cfg), "SYN", Criterion.PLCC, REGISTRY)
    cfg = ExperimentConfig(runs=CURVE_RUNS, k=5, registry=REGISTRY, learners=("nn", "svr"))
    return run_incremental_fusion_study(db, table, cfg, ordering, ordered_by=Criterion.PLCC)


def test_nn_boosting_beats_best_single_method_in_almost_every_run():
    db, table = _benchmark()
    cfg = ExperimentConfig(runs=BOOST_RUNS, k=5, registry=REGISTRY, learners=("nn",))
    X, y = build_feature_matrix(db, table, REGISTRY)
    singles = [MethodSpec(f"nn/{m}", (j,), "nn") for j, m in enumerate(REGISTRY)]
    boost = MethodSpec("nn/boost", tuple(range(len(REGISTRY))), "nn")
    outcomes = evaluate_methods(X, y, singles + [boost], fold_plans(len(db), cfg, "SYN"), cfg, "SYN")

    wins = 0
    for outcome in outcomes:
        best_single = max(r.plcc for r in (outcome.results[s.label] for s in singles) if r is not None)
        boosted = outcome.results[boost.label]
        if boosted is not None and boosted.plcc > best_single:
            wins += 1
    assert wins >= 0.95 * BOOST_RUNS, wins


def test_fusion_curve_is_non_decreasing_within_slack():
    curve = _fusion_curve()
    for learner in ("nn", "svr"):
        means = [curve.point(s, learner, Criterion.PLCC).mean for s in range(1, 6)]
        for previous, current in zip(means, means[1:]):
            assert current >= previous - 0.01, (learner, means)


def test_nn_fuses_better_than_svr_from_two_estimators_on():
    curve = _fusion_curve()
    for size in range(2, 6):
        nn = curve.point(size, "nn", Criterion.RMSE).mean
        svr = curve.point(size, "svr", Criterion.RMSE).mean
        assert nn < svr, (size, nn, svr)
    assert curve.point(5, "nn", Criterion.RMSE).mean < curve.point(1, "nn", Criterion.RMSE).mean


def test_live_psnr_matches_published_values():
    manifest = os.environ.get("IQABOOST_LIVE_MANIFEST")
    if not manifest:
        pytest.skip("IQABOOST_LIVE_MANIFEST not set")
    db = load_manifest(Path(manifest))
    assert category_counts(db) == expected_counts("LIVE")

    scores = os.environ.get("IQABOOST_LIVE_SCORES")
    if scores:
        fragment = ingest_external_scores(Path(scores), load_registry())
    else:
        fragment = compute_native_scores(db, ("PSNR",), base_dir=Path(manifest).parent)
    table = assemble_score_table(fragment, db.stimulus_ids, ("PSNR",))
    cfg = ExperimentConfig(runs=10, registry=("PSNR",), learners=("svr",))
    report = run_single_method_study(db, table, cfg)
    assert abs(report.get(db.database_id, "existing/PSNR", Criterion.PLCC).mean - 0.927) <= 0.02
    assert abs(report.get(db.database_id, "existing/PSNR", Criterion.SRCC).mean - 0.907) <= 0.02


if __name__ == "__main__":
    import sys

    failures = 0
    for _name, _fn in sorted(globals().items()):
        if _name.startswith("test_") and callable(_fn):
            try:
                _fn()
                print(f"PASS {_name}")
            except pytest.skip.Exception as exc:
                print(f"SKIP {_name}: {exc}")
            except AssertionError as exc:
                failures += 1
                print(f"FAIL {_name}: {exc}")
            except Exception as exc:
                failures += 1
                print(f"ERROR {_name}: {type(exc).__name__}: {exc}")
    print(f"\n{failures} failure(s)")
    sys.exit(1 if failures else 0)
