"""
Report generation: performance tables, fusion-curve files and workbooks.
"""

from .performance_table import VIEWS, PerformanceTable, emit_performance_table, format_cell, write_tables
from .fusion_curve import (
    CURVE_CSV_COLUMNS,
    SCATTER_CSV_COLUMNS,
    emit_fusion_curve,
    read_curve_csv,
    write_fusion_curve,
    write_scatter,
)
from .published import load_published, compare_with_published, render_comparison
from .workbook import write_workbook
from .report_generator import ReportBundle, ReportGenerator, available_views

__all__ = [
    "VIEWS",
    "PerformanceTable",
    "emit_performance_table",
    "format_cell",
    "write_tables",
    "CURVE_CSV_COLUMNS",
    "SCATTER_CSV_COLUMNS",
    "emit_fusion_curve",
    "read_curve_csv",
    "write_fusion_curve",
    "write_scatter",
    "load_published",
    "compare_with_published",
    "render_comparison",
    "write_workbook",
    "ReportBundle",
    "ReportGenerator",
    "available_views",
]
