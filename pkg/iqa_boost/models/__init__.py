"""
Data models for the IQA boosting toolkit.
"""

from .stimulus import CATEGORIES, StimulusRecord, Database
from .scores import (
    DEFAULT_METRIC_IDS,
    NATIVE_METRIC_IDS,
    ScoreFragment,
    GrayImage,
    MetricSource,
    Polarity,
    MetricDescriptor,
    SSIMParams,
    ScoreTable,
)
from .regression import Standardization, TargetScaling, NNModel, SVRModel
from .evaluation import Criterion, CRITERIA, LogisticFit, FoldPlan, CriterionResult
from .experiment import (
    LEARNERS,
    EXISTING,
    BOOST,
    BEST,
    ExperimentConfig,
    ReportRow,
    EvaluationReport,
    CurvePoint,
    FusionCurve,
    ScatterPoint,
    method_label,
    split_label,
)
from .validation_result import ValidationResult, Validation, ValidationSeverity

__all__ = [
    "CATEGORIES",
    "StimulusRecord",
    "Database",
    "DEFAULT_METRIC_IDS",
    "NATIVE_METRIC_IDS",
    "ScoreFragment",
    "GrayImage",
    "MetricSource",
    "Polarity",
    "MetricDescriptor",
    "SSIMParams",
    "ScoreTable",
    "Standardization",
    "TargetScaling",
    "NNModel",
    "SVRModel",
    "Criterion",
    "CRITERIA",
    "LogisticFit",
    "FoldPlan",
    "CriterionResult",
    "LEARNERS",
    "EXISTING",
    "BOOST",
    "BEST",
    "ExperimentConfig",
    "ReportRow",
    "EvaluationReport",
    "CurvePoint",
    "FusionCurve",
    "ScatterPoint",
    "method_label",
    "split_label",
    "ValidationResult",
    "Validation",
    "ValidationSeverity",
]
