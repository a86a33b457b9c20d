"""
Study orchestration: single-method, incremental-fusion and full-fusion runs.
"""

from .runner import (
    MethodSpec,
    RunOutcome,
    aggregate_runs,
    evaluate_methods,
    summarize,
    exclusion_rate,
    out_of_fold_predictions,
)
from .seeding import database_seed, learner_seed, fold_plans
from .studies import (
    decision_ledger,
    run_single_method_study,
    rank_estimators,
    run_incremental_fusion_study,
    run_fusion_scatter,
    run_full_fusion_study,
    count_boost_wins,
    ordering_for,
    significance_sample_size,
)
from .synthetic import make_synthetic_benchmark

__all__ = [
    "MethodSpec",
    "RunOutcome",
    "aggregate_runs",
    "evaluate_methods",
    "summarize",
    "exclusion_rate",
    "out_of_fold_predictions",
    "database_seed",
    "learner_seed",
    "fold_plans",
    "decision_ledger",
    "run_single_method_study",
    "rank_estimators",
    "run_incremental_fusion_study",
    "run_fusion_scatter",
    "run_full_fusion_study",
    "count_boost_wins",
    "ordering_for",
    "significance_sample_size",
    "make_synthetic_benchmark",
]
