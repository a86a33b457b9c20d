"""Published benchmark values, for side-by-side comparison with a fresh study.

``data/published_results.json`` holds the existing-method table and the
five-column comparison table for LIVE, MULTI and TID13. They are loaded into
an EvaluationReport (means only) so every table view works on them unchanged.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..models import CRITERIA, EXISTING, Criterion, EvaluationReport, ReportRow, method_label
from .performance_table import emit_performance_table

logger = logging.getLogger(__name__)

PUBLISHED_DATA_PATH = Path(__file__).resolve().parents[2] / "data" / "published_results.json"


def load_published(path: Optional[Path] = None) -> EvaluationReport:
    """Published values as a report; empty (with a warning) when the file is unavailable."""
    path = Path(path) if path is not None else PUBLISHED_DATA_PATH
    report = EvaluationReport(provenance={"source": str(path)})
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.warning("Could not read published results %s: %s", path, e)
        return report

    metrics = data.get("metrics", [])
    for criterion in CRITERIA:
        for db, values in data.get("existing", {}).get(criterion.value, {}).items():
            for metric_id, value in zip(metrics, values):
                report.add(ReportRow(db, method_label(EXISTING, metric_id), criterion, float(value), 0.0, 0))
        comparison = data.get("comparison", {})
        for db, values in comparison.get(criterion.value, {}).items():
            for label, value in zip(comparison.get("columns", []), values):
                report.add(ReportRow(db, label, criterion, float(value), 0.0, 0))
    return report


def compare_with_published(
    report: EvaluationReport, published: EvaluationReport, view: str = "comparison"
) -> List[Dict[str, Any]]:
    """
    Cell-by-cell differences for every (database, column, criterion) both reports share.

    Returns:
        List of {"database_id", "column", "criterion", "ours", "published", "difference"}
    """
    rows = []
    for criterion in CRITERIA:
        ours = emit_performance_table(report, criterion, view)
        theirs = emit_performance_table(published, criterion, view)
        for i, db in enumerate(ours.row_labels):
            if db not in theirs.row_labels:
                continue
            k = theirs.row_labels.index(db)
            for j, column in enumerate(ours.column_labels):
                if column not in theirs.column_labels:
                    continue
                mine = ours.cells[i][j]
                reference = theirs.cells[k][theirs.column_labels.index(column)]
                if mine is None or reference is None:
                    continue
                rows.append(
                    {
                        "database_id": db,
                        "column": column,
                        "criterion": criterion.value,
                        "ours": mine,
                        "published": reference,
                        "difference": mine - reference,
                    }
                )
    return rows


def render_comparison(rows: List[Dict[str, Any]]) -> str:
    """Aligned text block of compare_with_published output."""
    if not rows:
        return "No cells in common with the published tables.\n"
    lines = [f"{'Database':<10}{'Criterion':<10}{'Column':<16}{'Ours':>10}{'Published':>11}{'Diff':>10}"]
    for r in rows:
        better = (r["difference"] < 0) if Criterion(r["criterion"]).lower_is_better else (r["difference"] > 0)
        lines.append(
            f"{r['database_id']:<10}{r['criterion']:<10}{r['column']:<16}"
            f"{r['ours']:>10.4f}{r['published']:>11.4f}{r['difference']:>+10.4f}"
            + ("  better" if better and not math.isclose(r["difference"], 0.0) else "")
        )
    return "\n".join(lines) + "\n"
