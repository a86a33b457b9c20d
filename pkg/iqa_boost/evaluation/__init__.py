"""
Measurement protocol: logistic mapping, criteria, significance and folds.
"""

from .logistic import IDENTITY_FIT, fit_logistic_map, apply_logistic_map
from .criteria import rmse, plcc, srcc, evaluate_criteria
from .significance import significance_diff, significance_threshold
from .folds import hash64, make_fold_plan, iter_folds

__all__ = [
    "IDENTITY_FIT",
    "fit_logistic_map",
    "apply_logistic_map",
    "rmse",
    "plcc",
    "srcc",
    "evaluate_criteria",
    "significance_diff",
    "significance_threshold",
    "hash64",
    "make_fold_plan",
    "iter_folds",
]
