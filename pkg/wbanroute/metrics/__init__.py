from .counters import RunCounters
from .metrics_report import MetricsReport, compute_metrics
from .comparison import (
    COMPARISON_COLUMNS,
    aggregate_runs,
    compare_runs,
    directional_claims,
)
from .report_writer import (
    TABLE_COLUMNS,
    sort_reports,
    report_stem,
    report_table,
    parse_report_table,
    emit_series,
    emit_report,
    write_report_files,
)

__all__ = [
    "RunCounters",
    "MetricsReport",
    "compute_metrics",
    "COMPARISON_COLUMNS",
    "aggregate_runs",
    "compare_runs",
    "directional_claims",
    "TABLE_COLUMNS",
    "sort_reports",
    "report_stem",
    "report_table",
    "parse_report_table",
    "emit_series",
    "emit_report",
    "write_report_files",
]
