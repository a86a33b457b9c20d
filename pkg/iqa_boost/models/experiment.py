"""
Experiment configuration and result models.
"""

import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from ..exceptions import CompletenessError
from .evaluation import Criterion
from .scores import DEFAULT_METRIC_IDS

LEARNERS: Tuple[str, ...] = ("nn", "svr")

# Method labels are "<kind>/<name>": existing/PSNR, nn/PSNR, svr/boost, best/nn ...
EXISTING = "existing"
BOOST = "boost"
BEST = "best"


def method_label(kind: str, name: str) -> str:
    return f"{kind}/{name}"


def split_label(label: str) -> Tuple[str, str]:
    kind, _, name = label.partition("/")
    return kind, name


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything a study needs besides the data itself.

    Attributes:
        k: Folds per run
        runs: Runs per database
        master_seed: Root of every random stream
        learners: Subset of ("nn", "svr")
        alpha: Two-tailed significance level
        databases: Database ids to process (default: every manifest)
        registry: Ordered metric ids
        manifests: database_id -> manifest path
        score_files: External/native score files to ingest
        nn_hidden_dim: Hidden width override (None = registry size)
        svr_C / svr_epsilon: SVR hyperparameters
        per_fold_criteria: Average per-fold criteria instead of pooling a run
        significance_n: "test_fold" or "database" sample size for significance
        orderings: Explicit Part 2 orderings keyed "<db>/<criterion>"
        exclusion_threshold: Excluded-run fraction above which a row is invalid
        threads: Worker cap (None = IQABOOST_THREADS or CPU count)
    """

    k: int = 5
    runs: int = 100
    master_seed: int = 0
    learners: Tuple[str, ...] = LEARNERS
    alpha: float = 0.05
    databases: Tuple[str, ...] = ()
    registry: Tuple[str, ...] = DEFAULT_METRIC_IDS
    manifests: Dict[str, str] = field(default_factory=dict)
    score_files: Tuple[str, ...] = ()
    nn_hidden_dim: Optional[int] = None
    svr_C: float = 1.0
    svr_epsilon: float = 0.1
    per_fold_criteria: bool = False
    significance_n: str = "test_fold"
    orderings: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    exclusion_threshold: float = 0.05
    threads: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "learners", tuple(self.learners))
        object.__setattr__(self, "databases", tuple(self.databases))
        object.__setattr__(self, "registry", tuple(self.registry))
        object.__setattr__(self, "score_files", tuple(self.score_files))
        object.__setattr__(
            self, "orderings", {k: tuple(v) for k, v in self.orderings.items()}
        )
        if self.runs < 1:
            raise ValueError("ExperimentConfig.runs must be >= 1")
        if self.k < 2:
            raise ValueError("ExperimentConfig.k must be >= 2")
        if not self.registry:
            raise ValueError("ExperimentConfig.registry must not be empty")
        if len(set(self.registry)) != len(self.registry):
            raise ValueError("ExperimentConfig.registry contains duplicates")
        unknown = [name for name in self.learners if name not in LEARNERS]
        if unknown or not self.learners:
            raise ValueError(f"learners must be a non-empty subset of {LEARNERS}, got {self.learners}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.significance_n not in ("test_fold", "database"):
            raise ValueError("significance_n must be 'test_fold' or 'database'")
        if self.nn_hidden_dim is not None and self.nn_hidden_dim < 1:
            raise ValueError("nn_hidden_dim must be >= 1")

    @property
    def hidden_dim(self) -> int:
        return self.nn_hidden_dim or len(self.registry)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base_dir: Optional[Path] = None) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown config keys: {', '.join(unknown)}")
        data = dict(data)
        if base_dir is not None:
            data["manifests"] = {
                db: str(_resolve(base_dir, p)) for db, p in data.get("manifests", {}).items()
            }
            data["score_files"] = [str(_resolve(base_dir, p)) for p in data.get("score_files", [])]
        return cls(**data)

    @classmethod
    def from_json(cls, path: Path) -> "ExperimentConfig":
        path = Path(path)
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        return cls.from_dict(data, base_dir=path.parent)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "runs": self.runs,
            "master_seed": self.master_seed,
            "learners": list(self.learners),
            "alpha": self.alpha,
            "databases": list(self.databases),
            "registry": list(self.registry),
            "manifests": dict(sorted(self.manifests.items())),
            "score_files": list(self.score_files),
            "nn_hidden_dim": self.nn_hidden_dim,
            "svr_C": self.svr_C,
            "svr_epsilon": self.svr_epsilon,
            "per_fold_criteria": self.per_fold_criteria,
            "significance_n": self.significance_n,
            "orderings": {k: list(v) for k, v in sorted(self.orderings.items())},
            "exclusion_threshold": self.exclusion_threshold,
        }


def _resolve(base_dir: Path, path: str) -> Path:
    p = Path(path)
    return p if p.is_absolute() else base_dir / p


def _float_or_nan(value: Any) -> float:
    # JSON null stands for a mean with no surviving runs
    return math.nan if value is None else float(value)


@dataclass(frozen=True)
class ReportRow:
    """
    Aggregate of one (database, method, criterion) cell.

    Attributes:
        values: Per-run criterion values in run order (excluded runs absent)
        run_count: Number of runs the mean stands for
        excluded: Runs dropped because the learner failed
        source: For best/* rows, the method the value was taken from
    """

    database_id: str
    method: str
    criterion: Criterion
    mean: float
    std: float
    run_count: int
    excluded: int = 0
    values: Tuple[float, ...] = ()
    source: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "criterion", Criterion(self.criterion))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.std < 0 or math.isnan(self.std):
            raise ValueError("ReportRow.std must be non-negative")

    @property
    def key(self) -> Tuple[str, str, Criterion]:
        return (self.database_id, self.method, self.criterion)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "database_id": self.database_id,
            "method": self.method,
            "criterion": self.criterion.value,
            "mean": self.mean,
            "std": self.std,
            "run_count": self.run_count,
            "excluded": self.excluded,
            "values": list(self.values),
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReportRow":
        return cls(
            database_id=data["database_id"],
            method=data["method"],
            criterion=Criterion(data["criterion"]),
            mean=_float_or_nan(data["mean"]),
            std=float(data["std"]),
            run_count=int(data["run_count"]),
            excluded=int(data.get("excluded", 0)),
            values=tuple(data.get("values", ())),
            source=data.get("source", ""),
        )


@dataclass
class EvaluationReport:
    """
    Rows of a study plus the provenance needed to reproduce them.

    Attributes:
        rows: Aggregated cells, in insertion order
        provenance: Config echo, decision ledger and its hash
        invalid: Method labels whose exclusion rate exceeded the threshold
    """

    rows: List[ReportRow] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)
    invalid: List[str] = field(default_factory=list)

    def add(self, row: ReportRow) -> None:
        self.rows.append(row)

    def extend(self, other: "EvaluationReport") -> None:
        self.rows.extend(other.rows)
        self.invalid.extend(label for label in other.invalid if label not in self.invalid)

    def get(self, database_id: str, method: str, criterion: Criterion) -> ReportRow:
        for row in self.rows:
            if row.key == (database_id, method, criterion):
                return row
        raise CompletenessError(
            f"Report has no row for {database_id} / {method} / {criterion.value}",
            missing=(database_id, method, criterion.value),
        )

    def has(self, database_id: str, method: str, criterion: Criterion) -> bool:
        return any(row.key == (database_id, method, criterion) for row in self.rows)

    def databases(self) -> List[str]:
        return list(dict.fromkeys(row.database_id for row in self.rows))

    def methods(self, database_id: Optional[str] = None, kind: Optional[str] = None) -> List[str]:
        labels = (
            row.method
            for row in self.rows
            if database_id in (None, row.database_id)
            and kind in (None, split_label(row.method)[0])
        )
        return list(dict.fromkeys(labels))

    @property
    def is_valid(self) -> bool:
        return not self.invalid

    def to_dict(self) -> Dict[str, Any]:
        return {
            "provenance": self.provenance,
            "invalid": list(self.invalid),
            "rows": [row.to_dict() for row in self.rows],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EvaluationReport":
        return cls(
            rows=[ReportRow.from_dict(r) for r in data.get("rows", [])],
            provenance=dict(data.get("provenance", {})),
            invalid=list(data.get("invalid", [])),
        )

    def __repr__(self) -> str:
        return (
            f"EvaluationReport(databases={self.databases()}, rows={len(self.rows)}, "
            f"invalid={len(self.invalid)})"
        )


@dataclass(frozen=True)
class CurvePoint:
    """Mean/std of one criterion for one learner at one fusion size."""

    size: int
    learner: str
    criterion: Criterion
    mean: float
    std: float
    run_count: int
    excluded: int = 0
    significant: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "learner": self.learner,
            "criterion": self.criterion.value,
            "mean": self.mean,
            "std": self.std,
            "run_count": self.run_count,
            "excluded": self.excluded,
            "significant": self.significant,
        }


@dataclass(frozen=True)
class FusionCurve:
    """
    Incremental-fusion results for one database and one worst-first ordering.

    Attributes:
        database_id: Database the curve was measured on
        ordered_by: Criterion the worst-first ordering was derived from
        ordering: Metric ids, worst first
        points: One point per (size, learner, criterion)
        significance_line: Correlation value per criterion above which the
            gain over the single-method baseline is significant (None for RMSE)
    """

    database_id: str
    ordered_by: Criterion
    ordering: Tuple[str, ...]
    points: Tuple[CurvePoint, ...]
    significance_line: Dict[Criterion, Optional[float]] = field(default_factory=dict)

    def point(self, size: int, learner: str, criterion: Criterion) -> CurvePoint:
        for p in self.points:
            if (p.size, p.learner, p.criterion) == (size, learner, criterion):
                return p
        raise CompletenessError(
            f"Curve has no point for size {size}, {learner}, {criterion.value}",
            missing=(size, learner, criterion.value),
        )

    def learners(self) -> List[str]:
        return list(dict.fromkeys(p.learner for p in self.points))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "database_id": self.database_id,
            "ordered_by": self.ordered_by.value,
            "ordering": list(self.ordering),
            "significance_line": {c.value: v for c, v in self.significance_line.items()},
            "points": [p.to_dict() for p in self.points],
        }


@dataclass(frozen=True)
class ScatterPoint:
    """
    Subjective vs objective score of one stimulus in one run.

    Attributes:
        raw: Learner output before the logistic mapping
        mapped: Learner output after the mapping, in subjective units
    """

    stimulus_id: str
    category: str
    learner: str
    subjective: float
    raw: float
    mapped: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "stimulus_id": self.stimulus_id,
            "category": self.category,
            "learner": self.learner,
            "subjective": self.subjective,
            "raw": self.raw,
            "mapped": self.mapped,
        }
