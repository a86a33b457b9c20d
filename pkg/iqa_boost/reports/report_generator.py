"""
Report generator for study results.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence

from ..experiments import count_boost_wins
from ..models import CRITERIA, BOOST, EvaluationReport, FusionCurve, split_label
from ..utils.json_io import write_json
from .fusion_curve import emit_fusion_curve
from .performance_table import PerformanceTable, emit_performance_table

logger = logging.getLogger(__name__)


@dataclass
class ReportBundle:
    """
    Everything a rendered report contains.

    Attributes:
        tables: Performance tables (one per view and criterion)
        curves: Fusion-curve JSON payloads
        provenance: Config echo and decision-ledger hash of the study
    """

    tables: List[PerformanceTable] = field(default_factory=list)
    curves: List[Dict[str, Any]] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "provenance": self.provenance,
            "tables": [t.to_dict() for t in self.tables],
            "curves": list(self.curves),
        }


def available_views(report: EvaluationReport) -> List[str]:
    """Views the report has rows for, in display order."""
    views = []
    kinds = {split_label(m)[0] for m in report.methods()}
    for view in ("existing", "nn", "svr"):
        if any(split_label(m)[0] == view and split_label(m)[1] != BOOST for m in report.methods()):
            views.append(view)
    if "best" in kinds or any(split_label(m)[1] == BOOST for m in report.methods()):
        views.append("comparison")
    return views


class ReportGenerator:
    """Generator for study reports."""

    def __init__(self, report: EvaluationReport, curves: Sequence[FusionCurve] = ()):
        """
        Initialize report generator.

        Args:
            report: Aggregated study rows
            curves: Incremental-fusion curves to include
        """
        self.report = report
        self.curves = list(curves)

    def build_bundle(self, views: Sequence[str] = ()) -> ReportBundle:
        views = list(views) or available_views(self.report)
        tables = [emit_performance_table(self.report, c, v) for v in views for c in CRITERIA]
        return ReportBundle(
            tables=tables,
            curves=[emit_fusion_curve(curve)[0] for curve in self.curves],
            provenance={
                "decisions_sha256": self.report.provenance.get("decisions_sha256", ""),
                "study": self.report.provenance.get("study", ""),
            },
        )

    def generate_summary(self) -> str:
        """
        Generate a summary report.

        Returns:
            Summary text
        """
        excluded = sum(row.excluded for row in self.report.rows)
        summary = [
            "",
            "=" * 60,
            "IQA Study Summary",
            "=" * 60,
            f"Study: {self.report.provenance.get('study', 'unknown')}",
            f"Databases: {', '.join(self.report.databases())}",
            f"Methods: {len(self.report.methods())}",
            f"Rows: {len(self.report.rows)}",
            f"Excluded run-criterion values: {excluded}",
            f"Decision ledger: {self.report.provenance.get('decisions_sha256', '-')}",
            "=" * 60,
            "",
        ]

        if self.report.invalid:
            summary.append("Invalid rows (too many excluded runs):")
            for label in self.report.invalid:
                summary.append(f"  ✗ {label}")

        if any(split_label(m)[1] == BOOST for m in self.report.methods()) and "best/existing" in self.report.methods():
            wins = count_boost_wins(self.report)
            summary.append(f"\nBoosting beats the best existing method in {wins['wins']} of {wins['total']} comparisons:")
            for c in wins["comparisons"]:
                symbol = "✓" if c["boost_wins"] else "✗"
                summary.append(
                    f"  {symbol} {c['database_id']} {c['criterion']}: {c['boost_method']} "
                    f"{c['boost_mean']:.4f} vs {c['existing_method']} {c['existing_mean']:.4f}"
                )

        for curve in self.curves:
            summary.append(f"\nFusion curve {curve.database_id} ordered by {curve.ordered_by.value}:")
            summary.append(f"  ordering: {', '.join(curve.ordering)}")
            full = len(curve.ordering)
            for learner in curve.learners():
                first = curve.point(1, learner, curve.ordered_by).mean
                last = curve.point(full, learner, curve.ordered_by).mean
                summary.append(
                    f"  {learner} {curve.ordered_by.value}: {first:.4f} with 1 -> {last:.4f} with {full}"
                )
            for criterion, line in curve.significance_line.items():
                if line is not None and math.isfinite(line):
                    summary.append(f"  {criterion.value} significance line: {line:.4f}")

        return "\n".join(summary)

    def render_tables(self, views: Sequence[str] = ()) -> str:
        return "\n".join(t.to_text() for t in self.build_bundle(views).tables)

    def save_bundle(self, output_path: Path, views: Sequence[str] = ()) -> Path:
        """
        Save the bundle as JSON.

        Args:
            output_path: Path to save JSON file
        """
        write_json(self.build_bundle(views).to_dict(), output_path)
        logger.info("Saved report bundle: %s", output_path)
        return Path(output_path)

    def save_detailed_report(self, output_path: Path, views: Sequence[str] = ()) -> Path:
        """
        Save summary plus every table as text.

        Args:
            output_path: Path to save report file
        """
        text = self.generate_summary() + "\n\n" + self.render_tables(views)
        Path(output_path).parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info("Saved detailed report: %s", output_path)
        return Path(output_path)
