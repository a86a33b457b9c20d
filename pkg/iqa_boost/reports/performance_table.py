"""
Database x method performance tables.

Views:
    existing    logistic-mapped existing estimators
    nn / svr    single-method regressed rows of one learner
    comparison  best existing, best regressed, boosted

Bold markers are always recomputed from the cell values; whatever an input
file says about them is ignored.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..models import BEST, BOOST, EXISTING, Criterion, EvaluationReport, method_label, split_label
from ..utils.json_io import dumps

logger = logging.getLogger(__name__)

VIEWS: Tuple[str, ...] = ("existing", "nn", "svr", "comparison")

COMPARISON_COLUMNS: Tuple[str, ...] = (
    method_label(BEST, EXISTING),
    method_label(BEST, "nn"),
    method_label(BEST, "svr"),
    method_label("nn", BOOST),
    method_label("svr", BOOST),
)

VIEW_TITLES = {
    "existing": "Performance of existing IQA methods",
    "nn": "Performance of NN-regressed IQA methods",
    "svr": "Performance of SVR-regressed IQA methods",
    "comparison": "Performance of existing, regressed, and boosted IQA methods",
}

BOLD_MARK = "*"


def format_cell(value: Optional[float], criterion: Criterion) -> str:
    """Table text precision: RMSE to three significant digits (two decimals below 1), correlations to three decimals."""
    if value is None or not math.isfinite(value):
        return "-"
    if criterion.is_correlation:
        return f"{value:.3f}"
    if abs(value) < 1.0:
        return f"{value:.2f}"
    if abs(value) >= 100.0:
        return f"{value:.0f}"
    return format(value, "#.3g")


@dataclass
class PerformanceTable:
    """
    One criterion's table: a row per database, a column per method.

    Attributes:
        title: Table heading
        criterion: Criterion the cells hold
        view: Which view produced the table
        row_labels: Database ids
        column_labels: Column headings (metric id or method label)
        cells: Row-major means; None where a row has no value
    """

    title: str
    criterion: Criterion
    view: str
    row_labels: List[str]
    column_labels: List[str]
    cells: List[List[Optional[float]]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.criterion = Criterion(self.criterion)
        if len(self.cells) != len(self.row_labels):
            raise ValueError("PerformanceTable needs one cell row per row label")
        for row in self.cells:
            if len(row) != len(self.column_labels):
                raise ValueError("PerformanceTable rows must have one cell per column")

    def best_columns(self, row: int) -> List[int]:
        """Columns holding the extremal value of a row (all of them on ties)."""
        present = [(j, v) for j, v in enumerate(self.cells[row]) if v is not None and math.isfinite(v)]
        if not present:
            return []
        pick = min if self.criterion.lower_is_better else max
        best = pick(v for _, v in present)
        return [j for j, v in present if v == best]

    def is_best(self, row: int, column: int) -> bool:
        return column in self.best_columns(row)

    def to_text(self) -> str:
        header = ["Database"] + list(self.column_labels)
        body = []
        for i, label in enumerate(self.row_labels):
            best = self.best_columns(i)
            body.append(
                [label]
                + [
                    format_cell(v, self.criterion) + (BOLD_MARK if j in best else "")
                    for j, v in enumerate(self.cells[i])
                ]
            )
        widths = [max(len(r[c]) for r in [header] + body) for c in range(len(header))]
        lines = [f"{self.title} ({self.criterion.title})"]
        lines.append("  ".join(h.ljust(widths[c]) if c == 0 else h.rjust(widths[c]) for c, h in enumerate(header)))
        lines.append("  ".join("-" * w for w in widths))
        for row in body:
            lines.append("  ".join(v.ljust(widths[c]) if c == 0 else v.rjust(widths[c]) for c, v in enumerate(row)))
        lines.append(f"{BOLD_MARK} best in row")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "criterion": self.criterion.value,
            "view": self.view,
            "row_labels": list(self.row_labels),
            "column_labels": list(self.column_labels),
            "cells": [list(row) for row in self.cells],
            "best": [self.best_columns(i) for i in range(len(self.row_labels))],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PerformanceTable":
        return cls(
            title=data["title"],
            criterion=Criterion(data["criterion"]),
            view=data.get("view", ""),
            row_labels=list(data["row_labels"]),
            column_labels=list(data["column_labels"]),
            cells=[[None if v is None else float(v) for v in row] for row in data["cells"]],
        )

    @classmethod
    def from_json(cls, text: str) -> "PerformanceTable":
        return cls.from_dict(json.loads(text))


def _view_columns(report: EvaluationReport, view: str) -> Tuple[List[str], List[str]]:
    """(method labels, column headings) of a view, in first-appearance order."""
    if view == "comparison":
        labels = [c for c in COMPARISON_COLUMNS if c in report.methods()]
        return labels, labels
    labels = [m for m in report.methods(kind=view) if split_label(m)[1] != BOOST]
    return labels, [split_label(m)[1] for m in labels]


def emit_performance_table(
    report: EvaluationReport, criterion: Criterion, view: str = "existing"
) -> PerformanceTable:
    """
    Build one criterion's table from a report.

    Use .to_text() for the aligned text rendering and .to_dict()/.to_json()
    for the loss-free mirror.
    """
    if view not in VIEWS:
        raise ValueError(f"Unknown table view '{view}'; expected one of {', '.join(VIEWS)}")
    labels, headings = _view_columns(report, view)
    databases = report.databases()
    cells = []
    for db in databases:
        row = []
        for label in labels:
            if report.has(db, label, criterion):
                mean = report.get(db, label, criterion).mean
                row.append(mean if math.isfinite(mean) else None)
            else:
                row.append(None)
        cells.append(row)
    logger.debug("%s table for %s: %d databases x %d columns", view, criterion.value, len(databases), len(labels))
    return PerformanceTable(VIEW_TITLES[view], criterion, view, databases, headings, cells)


def write_tables(tables: Sequence[PerformanceTable], out_dir: Path, stem: str) -> List[Path]:
    """Write <stem>_<view>_<criterion>.txt and .json for every table."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for table in tables:
        base = out_dir / f"{stem}_{table.view}_{table.criterion.value.lower()}"
        for suffix, text in ((".txt", table.to_text()), (".json", table.to_json())):
            path = base.with_suffix(suffix)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            written.append(path)
    logger.info("Wrote %d table files to %s", len(written), out_dir)
    return written
