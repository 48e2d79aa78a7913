import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from wbanroute.utility import HIGHER_IS_BETTER, PROTOCOL_ORDER, ProtocolKind
from .metrics_report import MetricsReport

COMPARISON_COLUMNS = [
    "metric",
    "baseline",
    "proposed_mean",
    "proposed_std",
    "baseline_mean",
    "baseline_std",
    "ratio",
    "change_pct",
    "flag",
]

# ratios this close to 1 are reported as neutral
_NEUTRAL_TOLERANCE = 1e-12


def aggregate_runs(reports: Sequence[Tuple[ProtocolKind, MetricsReport]]) -> pd.DataFrame:
    """Mean and sample standard deviation of every compared metric
    per protocol across seeds. Absent values are skipped; a single
    value has standard deviation 0.

    Returns:
        pd.DataFrame:
            indexed by protocol tag, with ``<metric>_mean`` and
            ``<metric>_std`` columns
    """
    records = []
    for kind, report in reports:
        record: Dict[str, Optional[float]] = {"protocol": kind.value}
        for metric in HIGHER_IS_BETTER:
            value = getattr(report, metric)
            record[metric] = np.nan if value is None else float(value)
        records.append(record)
    frame = pd.DataFrame.from_records(records, columns=["protocol"] + list(HIGHER_IS_BETTER))
    grouped = frame.groupby("protocol", sort=False)
    means = grouped.mean()
    stds = grouped.std(ddof=1).where(grouped.count() > 1, 0.0)
    stds = stds.where(means.notna(), np.nan)
    return pd.concat([means.add_suffix("_mean"), stds.add_suffix("_std")], axis=1)


def _flag(ratio: float, higher_is_better: bool) -> str:
    if math.isnan(ratio) or abs(ratio - 1.0) <= _NEUTRAL_TOLERANCE:
        return "neutral"
    better = ratio > 1.0 if higher_is_better else ratio < 1.0
    return "improved" if better else "worse"


def _row(metric: str, baseline: str, proposed: pd.Series, other: pd.Series) -> Dict:
    p_mean, b_mean = proposed[f"{metric}_mean"], other[f"{metric}_mean"]
    if np.isnan(p_mean) or np.isnan(b_mean) or b_mean == 0:
        ratio = math.nan
    else:
        ratio = float(p_mean / b_mean)
    return {
        "metric": metric,
        "baseline": baseline,
        "proposed_mean": p_mean,
        "proposed_std": proposed[f"{metric}_std"],
        "baseline_mean": b_mean,
        "baseline_std": other[f"{metric}_std"],
        "ratio": ratio,
        "change_pct": (ratio - 1.0) * 100.0,
        "flag": _flag(ratio, HIGHER_IS_BETTER[metric]),
    }


def compare_runs(reports: Sequence[Tuple[ProtocolKind, MetricsReport]]) -> pd.DataFrame:
    """Compare the proposed protocol against every baseline present.

    Each compared metric gets one row per baseline and one row
    against the best baseline for that metric (the highest
    throughput, the lowest delay, energy and NRL). ``change_pct`` is
    ``(proposed / baseline - 1) * 100``; a zero or absent
    denominator gives ``NaN`` and a neutral flag.

    Args:
        reports:
            ``(protocol, report)`` pairs, typically one per protocol
            and seed of otherwise identical scenarios

    Raises:
        ValueError:
            if the proposed protocol or every baseline is missing

    Examples::

        from wbanroute.metrics import compare_runs
        from wbanroute.utility import ProtocolKind

        table = compare_runs([(ProtocolKind.PROPOSED, mine),
                              (ProtocolKind.RRLS, theirs)])
        table[table.baseline == "best"]
    """
    kinds = {kind for kind, _ in reports}
    if ProtocolKind.PROPOSED not in kinds:
        raise ValueError("The comparison needs a run of the proposed protocol")
    baselines = [k.value for k in PROTOCOL_ORDER if k in kinds and k is not ProtocolKind.PROPOSED]
    if not baselines:
        raise ValueError("The comparison needs at least one baseline run")
    summary = aggregate_runs(reports)
    proposed = summary.loc[ProtocolKind.PROPOSED.value]
    rows: List[Dict] = []
    for metric, higher in HIGHER_IS_BETTER.items():
        for baseline in baselines:
            rows.append(_row(metric, baseline, proposed, summary.loc[baseline]))
        candidates = summary.loc[baselines, f"{metric}_mean"].dropna()
        if candidates.empty:
            best = summary.loc[baselines[0]]
        else:
            best = summary.loc[candidates.idxmax() if higher else candidates.idxmin()]
        rows.append(_row(metric, "best", proposed, best))
    return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)


def directional_claims(comparison: pd.DataFrame) -> Dict[str, bool]:
    """whether the proposed protocol beats the best baseline on each
    compared metric"""
    best = comparison[comparison["baseline"] == "best"]
    return {row.metric: row.flag == "improved" for row in best.itertuples(index=False)}
