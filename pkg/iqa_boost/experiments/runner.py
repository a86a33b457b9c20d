"""
Run loop shared by every study.

A study is a list of MethodSpecs evaluated over the same fold plans. Each run
is an independent work unit; results come back in run order so aggregation
never depends on which thread finished first.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from ..evaluation import apply_logistic_map, evaluate_criteria, fit_logistic_map, iter_folds
from ..exceptions import DegenerateInputError, IQABoostError
from ..models import Criterion, CriterionResult, ExperimentConfig, FoldPlan
from ..regressors import BaseLearner, NNLearner, SVRLearner
from ..utils import worker_count
from .seeding import learner_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MethodSpec:
    """
    One row of a study.

    Attributes:
        label: Report label, e.g. "existing/PSNR", "nn/boost"
        columns: Indices into the feature matrix, in fitting order
        learner: Learner name, or None for an existing (mapped-only) method
    """

    label: str
    columns: Tuple[int, ...]
    learner: Optional[str] = None


@dataclass
class RunOutcome:
    """Criteria of every method in one run; None marks an excluded method."""

    run_index: int
    results: Dict[str, Optional[CriterionResult]] = field(default_factory=dict)
    failures: Dict[str, str] = field(default_factory=dict)


def build_learners(cfg: ExperimentConfig) -> Dict[str, BaseLearner]:
    available = {
        "nn": lambda: NNLearner(cfg.hidden_dim),
        "svr": lambda: SVRLearner(cfg.svr_C, cfg.svr_epsilon),
    }
    return {name: available[name]() for name in cfg.learners}


def aggregate_runs(per_run_values: Sequence[float]) -> Tuple[float, float]:
    """
    Mean and population standard deviation of per-run values.

    Raises:
        DegenerateInputError: no values
    """
    values = np.asarray(per_run_values, dtype=np.float64)
    if values.size == 0:
        raise DegenerateInputError("Cannot aggregate an empty list of runs")
    mean = float(np.mean(values))
    return mean, float(np.sqrt(np.mean((values - mean) ** 2)))


def _fold_predictions(
    method: MethodSpec,
    X: np.ndarray,
    y: np.ndarray,
    train: np.ndarray,
    test: np.ndarray,
    learner: Optional[BaseLearner],
    seed: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """(mapped, raw) predictions for the test fold."""
    cols = list(method.columns)
    if learner is None:
        raw_train = X[np.ix_(train, cols)][:, 0]
        raw_test = X[np.ix_(test, cols)][:, 0]
    else:
        model = learner.fit(X[np.ix_(train, cols)], y[train], seed)
        raw_train = model.predict_many(X[np.ix_(train, cols)])
        raw_test = model.predict_many(X[np.ix_(test, cols)])
    mapping = fit_logistic_map(raw_train, y[train])
    return np.asarray(apply_logistic_map(mapping, raw_test)), raw_test


def _mean_result(results: List[CriterionResult]) -> CriterionResult:
    def mean_of(values):
        present = [v for v in values if v is not None]
        return float(np.mean(present)) if present else None

    return CriterionResult(
        rmse=float(np.mean([r.rmse for r in results])),
        plcc=mean_of([r.plcc for r in results]),
        srcc=mean_of([r.srcc for r in results]),
        n=sum(r.n for r in results),
    )


def _cross_predict(
    plan: FoldPlan,
    folds: Sequence[Tuple[int, np.ndarray, np.ndarray]],
    method: MethodSpec,
    X: np.ndarray,
    y: np.ndarray,
    learner: Optional[BaseLearner],
    cfg: ExperimentConfig,
    database_id: str,
) -> Tuple[np.ndarray, np.ndarray, List[CriterionResult]]:
    """Every stimulus predicted by the fold that held it out: (mapped, raw, per-fold criteria)."""
    mapped = np.empty(y.size)
    raw = np.empty(y.size)
    per_fold: List[CriterionResult] = []
    for fold, train, test in folds:
        seed = learner_seed(cfg.master_seed, database_id, plan.run_index, method.learner or "", fold)
        fold_mapped, fold_raw = _fold_predictions(method, X, y, train, test, learner, seed)
        mapped[test] = fold_mapped
        raw[test] = fold_raw
        if cfg.per_fold_criteria:
            per_fold.append(evaluate_criteria(fold_mapped, fold_raw, y[test]))
    return mapped, raw, per_fold


def _evaluate_run(
    plan: FoldPlan,
    X: np.ndarray,
    y: np.ndarray,
    methods: Sequence[MethodSpec],
    learners: Dict[str, BaseLearner],
    cfg: ExperimentConfig,
    database_id: str,
) -> RunOutcome:
    outcome = RunOutcome(plan.run_index)
    folds = list(iter_folds(plan))

    for method in methods:
        learner = learners.get(method.learner) if method.learner else None
        try:
            mapped, raw, per_fold = _cross_predict(plan, folds, method, X, y, learner, cfg, database_id)
            result = _mean_result(per_fold) if cfg.per_fold_criteria else evaluate_criteria(mapped, raw, y)
        except IQABoostError as e:
            outcome.results[method.label] = None
            outcome.failures[method.label] = str(e)
            logger.warning("Run %d of '%s' excluded for %s: %s", plan.run_index, database_id, method.label, e)
            continue
        outcome.results[method.label] = result

    logger.debug("Run %d of '%s' done (%d methods)", plan.run_index, database_id, len(methods))
    return outcome


def evaluate_methods(
    X: np.ndarray,
    y: np.ndarray,
    methods: Sequence[MethodSpec],
    plans: Sequence[FoldPlan],
    cfg: ExperimentConfig,
    database_id: str,
    learners: Optional[Dict[str, BaseLearner]] = None,
) -> List[RunOutcome]:
    """
    Evaluate every method on every run.

    Returns:
        One RunOutcome per plan, in plan order
    """
    learners = build_learners(cfg) if learners is None else learners
    n_jobs = min(worker_count(cfg.threads), max(1, len(plans)))
    return Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_evaluate_run)(plan, X, y, methods, learners, cfg, database_id) for plan in plans
    )


def out_of_fold_predictions(
    X: np.ndarray,
    y: np.ndarray,
    method: MethodSpec,
    plan: FoldPlan,
    cfg: ExperimentConfig,
    database_id: str,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Mapped and raw prediction of every stimulus in one run.

    Seeds match evaluate_methods, so these are the predictions behind that
    run's criteria.

    Raises:
        IQABoostError: the learner or the logistic fit fails on a fold
    """
    learner = build_learners(cfg).get(method.learner) if method.learner else None
    mapped, raw, _ = _cross_predict(plan, list(iter_folds(plan)), method, X, y, learner, cfg, database_id)
    return mapped, raw


@dataclass(frozen=True)
class MethodSummary:
    """Aggregate of one method for one criterion."""

    mean: float
    std: float
    values: Tuple[float, ...]
    excluded: int


def summarize(outcomes: Sequence[RunOutcome], label: str, criterion: Criterion) -> MethodSummary:
    """Aggregate one method/criterion over runs; runs without a value count as excluded."""
    values = []
    for outcome in outcomes:
        result = outcome.results.get(label)
        value = None if result is None else result.value(criterion)
        if value is not None:
            values.append(value)
    excluded = len(outcomes) - len(values)
    if not values:
        return MethodSummary(float("nan"), 0.0, (), excluded)
    mean, std = aggregate_runs(values)
    return MethodSummary(mean, std, tuple(values), excluded)


def exclusion_rate(outcomes: Sequence[RunOutcome], label: str) -> float:
    if not outcomes:
        return 0.0
    return sum(1 for o in outcomes if o.results.get(label) is None) / len(outcomes)
