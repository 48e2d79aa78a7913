import dataclasses
import io
import json
import logging
import os
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import pandas as pd

from wbanroute.utility import HIGHER_IS_BETTER, PROTOCOL_ORDER, ProtocolKind, ReportFormat
from .comparison import compare_runs
from .metrics_report import MetricsReport

LOGGER = logging.getLogger(__name__)

# fixed column order of the machine table: the report fields in
# declaration order
TABLE_COLUMNS = [f.name for f in dataclasses.fields(MetricsReport)]

JSON_COLUMNS = ("delay_by_class_ms", "peak_temp_c", "drops", "config")

SERIES_AXES = ("n_nodes", "rate_pkts_per_s")


def _optional(parse: Callable[[str], Any]) -> Callable[[str], Any]:
    def parse_cell(cell: str) -> Any:
        return None if cell == "" else parse(cell)

    return parse_cell


def _peak_temperatures(cell: str) -> Dict[int, float]:
    return {int(k): v for k, v in json.loads(cell).items()}


_PARSERS: Dict[str, Callable[[str], Any]] = {
    "protocol": str,
    "n_nodes": int,
    "seed": int,
    "originated": int,
    "delivered": int,
    "in_flight": int,
    "control_tx": int,
    "data_tx": int,
    "alive_sensors_at_end": int,
    "hotspot_events": int,
    "mean_delay_ms": _optional(float),
    "nrl": _optional(float),
    "first_death_s": _optional(float),
    "delivery_ratio": _optional(float),
    "delay_by_class_ms": json.loads,
    "peak_temp_c": _peak_temperatures,
    "drops": json.loads,
    "config": json.loads,
}


def _format_cell(name: str, value: Any) -> str:
    if value is None:
        return ""
    if name in JSON_COLUMNS:
        return json.dumps(value, sort_keys=True)
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def sort_reports(reports: Iterable[MetricsReport]) -> List[MetricsReport]:
    """protocol order first, then node count, data rate and seed"""
    order = {kind.value: index for index, kind in enumerate(PROTOCOL_ORDER)}
    return sorted(
        reports,
        key=lambda r: (order.get(r.protocol, len(order)), r.n_nodes, r.rate_pkts_per_s, r.seed),
    )


def report_stem(report: MetricsReport) -> str:
    """file name stem ``<protocol>_<nodes>_<rate>_<seed>`` of a run"""
    return f"{report.protocol}_{report.n_nodes}_{report.rate_pkts_per_s:g}_{report.seed}"


def report_table(reports: Iterable[MetricsReport]) -> pd.DataFrame:
    """The machine table as text cells: one row per run in stable
    order, floats written with ``repr`` and map-valued fields as
    JSON."""
    rows = [
        [_format_cell(name, getattr(report, name)) for name in TABLE_COLUMNS]
        for report in sort_reports(reports)
    ]
    return pd.DataFrame(rows, columns=TABLE_COLUMNS, dtype=str)


def parse_report_table(text: str) -> List[MetricsReport]:
    """Invert the machine table produced by :func:`emit_report`.

    Raises:
        ValueError:
            if the header differs from the fixed column order
    """
    frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    if list(frame.columns) != TABLE_COLUMNS:
        raise ValueError(f"Unexpected report columns {list(frame.columns)}")
    reports = []
    for record in frame.to_dict(orient="records"):
        values = {name: _PARSERS.get(name, float)(cell) for name, cell in record.items()}
        reports.append(MetricsReport(**values))
    return reports


def emit_series(reports: Iterable[MetricsReport], x_axis: str, metric: str) -> str:
    """Plot series of ``metric`` against ``x_axis`` (``n_nodes`` or
    ``rate_pkts_per_s``): one CSV row per protocol and x value with
    the mean, sample standard deviation and number of seeds."""
    if x_axis not in SERIES_AXES:
        raise ValueError(f"Unknown series axis {x_axis}")
    if metric not in TABLE_COLUMNS:
        raise ValueError(f"Unknown metric {metric}")
    records = [
        {"protocol": r.protocol, x_axis: getattr(r, x_axis), metric: getattr(r, metric)}
        for r in sort_reports(reports)
    ]
    frame = pd.DataFrame.from_records(records, columns=["protocol", x_axis, metric])
    frame[metric] = pd.to_numeric(frame[metric])
    grouped = frame.groupby(["protocol", x_axis], sort=False)[metric]
    series = grouped.agg(["mean", "std", "count"]).reset_index()
    series["std"] = series["std"].where(series["count"] > 1, 0.0)
    series = series.rename(columns={"count": "n"})
    return series.to_csv(index=False)


def _summary(reports: Sequence[MetricsReport]) -> str:
    lines = []
    for report in sort_reports(reports):
        delay = "n/a" if report.mean_delay_ms is None else f"{report.mean_delay_ms:.2f} ms"
        nrl = "n/a" if report.nrl is None else f"{report.nrl:.3f}"
        lines.append(
            f"{report_stem(report)}: throughput {report.throughput_kbps:.3f} kbps, "
            f"delay {delay}, energy {report.energy_consumed_j:.4f} J, NRL {nrl}, "
            f"delivered {report.delivered}/{report.originated}, "
            f"peak {report.max_temp_c:.3f} C, hotspot events {report.hotspot_events}"
        )
    kinds = {r.protocol for r in reports}
    if ProtocolKind.PROPOSED.value in kinds and len(kinds) > 1:
        pairs = [(ProtocolKind(r.protocol), r) for r in reports]
        best = compare_runs(pairs)
        best = best[best["baseline"] == "best"]
        lines.append("")
        lines.append("proposed vs best baseline:")
        for row in best.itertuples(index=False):
            lines.append(f"  {row.metric}: {row.change_pct:+.1f}% ({row.flag})")
    return "\n".join(lines) + "\n"


def emit_report(
    reports: Iterable[MetricsReport],
    fmt: ReportFormat = ReportFormat.TABLE,
    x_axis: str = "n_nodes",
    metric: str = "throughput_kbps",
) -> str:
    """Serialise reports.

    Args:
        reports:
            the runs
        fmt:
            ``TABLE`` gives the CSV machine table (header only when
            empty), ``SUMMARY`` one human line per run plus the
            comparison against the best baseline, ``SERIES`` the
            plot series of ``metric`` against ``x_axis``
        x_axis:
            series axis
        metric:
            series metric
    """
    reports = list(reports)
    if fmt is ReportFormat.TABLE:
        return report_table(reports).to_csv(index=False)
    if fmt is ReportFormat.SUMMARY:
        return _summary(reports)
    return emit_series(reports, x_axis, metric)


def write_report_files(
    reports: Iterable[MetricsReport],
    out_dir: str,
    formats: Optional[Iterable[ReportFormat]] = None,
) -> List[str]:
    """Write the requested formats into ``out_dir``: ``report.csv``
    plus one ``<protocol>_<nodes>_<rate>_<seed>.csv`` per run,
    ``summary.txt``, and ``series_<metric>_<axis>.csv`` for every
    compared metric along each axis that varies.

    Returns:
        list:
            the written paths
    """
    reports = sort_reports(reports)
    formats = [ReportFormat.TABLE, ReportFormat.SUMMARY] if formats is None else list(formats)
    os.makedirs(out_dir, exist_ok=True)
    written: List[str] = []

    def write(name: str, text: str) -> None:
        path = os.path.join(out_dir, name)
        with open(path, "w") as outfile:
            outfile.write(text)
        written.append(path)

    if ReportFormat.TABLE in formats:
        write("report.csv", emit_report(reports, ReportFormat.TABLE))
        for report in reports:
            write(report_stem(report) + ".csv", emit_report([report], ReportFormat.TABLE))
    if ReportFormat.SUMMARY in formats:
        write("summary.txt", emit_report(reports, ReportFormat.SUMMARY))
    if ReportFormat.SERIES in formats:
        axes = [a for a in SERIES_AXES if len({getattr(r, a) for r in reports}) > 1] or ["n_nodes"]
        for axis in axes:
            for metric in HIGHER_IS_BETTER:
                write(f"series_{metric}_{axis}.csv", emit_series(reports, axis, metric))
    LOGGER.info("Wrote %d report files to %s", len(written), out_dir)
    return written
