"""
Excel export of performance tables: one sheet per criterion, best cells bold.
"""

import logging
from pathlib import Path
from typing import Sequence

import openpyxl
from openpyxl.styles import Font, PatternFill

from ..models import CRITERIA, EvaluationReport
from .performance_table import PerformanceTable, emit_performance_table

logger = logging.getLogger(__name__)

_HEADER_FILL = PatternFill(start_color="DAEEF3", end_color="DAEEF3", fill_type="solid")
_BOLD = Font(bold=True)


def _write_block(ws, table: PerformanceTable, start_row: int) -> int:
    """Write one table at start_row; returns the first free row after it."""
    ws.cell(row=start_row, column=1, value=table.title).font = _BOLD
    header_row = start_row + 1
    for c, heading in enumerate(["Database"] + list(table.column_labels), start=1):
        cell = ws.cell(row=header_row, column=c, value=heading)
        cell.fill = _HEADER_FILL
    for i, label in enumerate(table.row_labels):
        r = header_row + 1 + i
        ws.cell(row=r, column=1, value=label)
        best = table.best_columns(i)
        for j, value in enumerate(table.cells[i]):
            cell = ws.cell(row=r, column=j + 2, value=value)
            cell.number_format = "0.000" if table.criterion.is_correlation else "0.00"
            if j in best:
                cell.font = _BOLD
    return header_row + len(table.row_labels) + 2


def write_workbook(report: EvaluationReport, path: Path, views: Sequence[str] = ("existing",)) -> Path:
    """Save an .xlsx with a sheet per criterion holding every requested view."""
    workbook = openpyxl.Workbook()
    workbook.remove(workbook.active)
    for criterion in CRITERIA:
        ws = workbook.create_sheet(criterion.value)
        row = 1
        for view in views:
            row = _write_block(ws, emit_performance_table(report, criterion, view), row)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    workbook.save(path)
    logger.info("Saved workbook: %s", path)
    return path
