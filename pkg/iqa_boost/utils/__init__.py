"""
Utility functions for the IQA boosting toolkit.
"""

from .string_matcher import StringMatcher
from .metric_registry import load_registry, require_metric
from .count_table import expected_counts, load_all_counts, read_counts_file
from .score_scales import declared_score_scale, load_score_scales
from .workers import worker_count

__all__ = [
    "StringMatcher",
    "load_registry",
    "require_metric",
    "expected_counts",
    "load_all_counts",
    "read_counts_file",
    "declared_score_scale",
    "load_score_scales",
    "worker_count",
]
