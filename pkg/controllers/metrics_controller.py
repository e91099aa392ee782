"""
Metrics Controller - run summaries, per-function aggregation and mode comparison.

All statistics are taken over control-period windows; a window violates
the SLA when its mean composed response time exceeds it. Standard
deviations use the population formula.
"""
from typing import Dict, List, Mapping, Sequence

import numpy as np

from models.errors import EmptySeries, GridMismatch
from models.report import OVERALL, ComparisonReport, ComparisonRow, TableRow
from models.simulation import FunctionSummary, RunResult, TickSeries


class MetricsController:
    """Controller for metrics aggregation."""

    @staticmethod
    def summarize(
        series: TickSeries,
        slas: Mapping[str, float],
        skip_warmup_s: float = 0.0,
    ) -> Dict[str, FunctionSummary]:
        """
        Per-function summary over control-period windows.

        Raises:
            EmptySeries: no complete window left after skip_warmup_s
        """
        rt, cores = _trimmed_windows(series, skip_warmup_s)
        if rt.shape[0] == 0:
            raise EmptySeries()

        summary = {}
        for i, name in enumerate(series.functions):
            sla = slas.get(name)
            violation = float(np.mean(rt[:, i] > sla) * 100.0) if sla is not None else 0.0
            summary[name] = FunctionSummary(
                rt_mean_ms=float(np.mean(rt[:, i])),
                rt_std_ms=float(np.std(rt[:, i])),
                cores_mean_millicores=float(np.mean(cores[:, i])),
                cores_std_millicores=float(np.std(cores[:, i])),
                violation_pct=violation,
                no_sla=sla is None,
            )
        return summary

    @staticmethod
    def aggregate(
        results: Sequence[RunResult],
        slas: Mapping[str, float],
        skip_warmup_s: float = 0.0,
    ) -> List[TableRow]:
        """
        Summary rows (one per function plus overall) for replications of one
        mode.

        RT and cores mu/sigma are pooled over the windows of all
        replications, so they equal the statistics of the concatenated
        series. V mu/sigma are taken across the per-replication shares. The
        overall row uses the per-window mean across functions.
        """
        if not results:
            raise EmptySeries()
        summaries = [
            MetricsController.summarize(r.series, slas, skip_warmup_s) if skip_warmup_s else r.summary
            for r in results
        ]
        functions = list(results[0].series.functions)
        rt_windows, cores_windows = _pooled_windows(results, functions, skip_warmup_s)
        mode = results[0].mode.value
        rows = []
        for name in functions + [OVERALL]:
            if name == OVERALL:
                rt, c = rt_windows.mean(axis=1), cores_windows.mean(axis=1)
            else:
                i = functions.index(name)
                rt, c = rt_windows[:, i], cores_windows[:, i]
            v = [_metric(s, name, "violation_pct") for s in summaries]
            rows.append(TableRow(
                function=name,
                sla_ms=slas.get(name),
                mode=mode,
                rt_mu=float(np.mean(rt)),
                rt_sigma=float(np.std(rt)),
                v_mu=float(np.mean(v)),
                v_sigma=float(np.std(v)),
                c_mu=float(np.mean(c)),
                c_sigma=float(np.std(c)),
            ))
        return rows

    @staticmethod
    def compare(results_a: Sequence[RunResult], results_b: Sequence[RunResult]) -> ComparisonReport:
        """
        Relative deltas of a against b, paired by replication seed and
        averaged over pairs.

        Raises:
            GridMismatch: apps, seeds or function sets differ
        """
        if not results_a or not results_b:
            raise GridMismatch("both result sets must be non-empty")
        apps = {r.app for r in results_a} | {r.app for r in results_b}
        if len(apps) != 1:
            raise GridMismatch(f"results come from different apps: {sorted(apps)}")
        by_seed_a = {r.seed: r for r in results_a}
        by_seed_b = {r.seed: r for r in results_b}
        if set(by_seed_a) != set(by_seed_b):
            raise GridMismatch("replication seeds differ", seeds_a=sorted(by_seed_a), seeds_b=sorted(by_seed_b))
        functions = list(results_a[0].series.functions)
        if any(sorted(r.series.functions) != sorted(functions) for r in list(results_a) + list(results_b)):
            raise GridMismatch("function sets differ")

        seeds = sorted(by_seed_a)
        report = ComparisonReport(
            app=results_a[0].app,
            mode_a=results_a[0].mode.value,
            mode_b=results_b[0].mode.value,
            replications=len(seeds),
        )
        for name in functions + [OVERALL]:
            pairs = [(by_seed_a[s].summary, by_seed_b[s].summary) for s in seeds]
            cores_a = [_metric(a, name, "cores_mean_millicores") for a, _ in pairs]
            cores_b = [_metric(b, name, "cores_mean_millicores") for _, b in pairs]
            report.rows.append(ComparisonRow(
                function=name,
                cores_a=float(np.mean(cores_a)),
                cores_b=float(np.mean(cores_b)),
                cores_reduction_pct=float(np.mean([
                    MetricsController.reduction_pct(a, b) for a, b in zip(cores_a, cores_b)
                ])),
                rt_delta_pct=float(np.mean([
                    MetricsController.delta_pct(_metric(a, name, "rt_mean_ms"), _metric(b, name, "rt_mean_ms"))
                    for a, b in pairs
                ])),
                violation_delta_pp=float(np.mean([
                    _metric(a, name, "violation_pct") - _metric(b, name, "violation_pct") for a, b in pairs
                ])),
            ))
        return report

    @staticmethod
    def reduction_pct(a: float, b: float) -> float:
        """How much lower a is than b, in percent of b."""
        return 0.0 if b == 0 else (b - a) / b * 100.0

    @staticmethod
    def delta_pct(a: float, b: float) -> float:
        return 0.0 if b == 0 else (a - b) / b * 100.0


def _metric(summary, name: str, attribute: str) -> float:
    if name == OVERALL:
        return float(np.mean([getattr(s, attribute) for s in summary.values()]))
    return float(getattr(summary[name], attribute))


def _window_seconds(series: TickSeries) -> float:
    if len(series.time_s) > 1:
        return float(series.time_s[1] - series.time_s[0]) * series.ticks_per_window
    return 1.0


def _trimmed_windows(series: TickSeries, skip_warmup_s: float):
    """RT and cores window means with the warmup windows dropped."""
    window_s = _window_seconds(series)
    first = int(np.ceil(skip_warmup_s / window_s - 1e-9)) if skip_warmup_s > 0 else 0
    return series.windows(series.rt_ms)[first:], series.windows(series.millicores)[first:]


def _pooled_windows(results: Sequence[RunResult], functions: List[str], skip_warmup_s: float):
    """Windows of every replication stacked, columns in `functions` order."""
    rt_parts, cores_parts = [], []
    for result in results:
        columns = [result.series.functions.index(name) for name in functions]
        rt, cores = _trimmed_windows(result.series, skip_warmup_s)
        rt_parts.append(rt[:, columns])
        cores_parts.append(cores[:, columns])
    return np.concatenate(rt_parts), np.concatenate(cores_parts)
