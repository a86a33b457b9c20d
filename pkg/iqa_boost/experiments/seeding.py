"""
Seed derivation for runs, folds and learners.

Every random stream is a hash of the master seed and the coordinates of the
work unit, so streams are independent of execution order and thread count.
"""

from typing import List

from ..evaluation import hash64, make_fold_plan
from ..models import ExperimentConfig, FoldPlan


def database_seed(master_seed: int, database_id: str) -> int:
    return hash64(master_seed, database_id)


def learner_seed(master_seed: int, database_id: str, run_index: int, learner: str, fold: int) -> int:
    """Initialization seed for one learner fit; independent of the fused columns."""
    return hash64(master_seed, database_id, run_index, learner, fold)


def fold_plans(n: int, cfg: ExperimentConfig, database_id: str) -> List[FoldPlan]:
    """One plan per run; run r is seeded from hash64(hash64(master_seed, database_id), r)."""
    root = database_seed(cfg.master_seed, database_id)
    return [make_fold_plan(n, cfg.k, run_index, root) for run_index in range(cfg.runs)]
