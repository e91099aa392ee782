"""
Report View - CSV files and text tables for simulation results.

All CSV output uses a fixed float format and "\n" line endings so that
identical runs produce byte-identical files.
"""
from pathlib import Path
from typing import Any, Dict, List, Sequence

import numpy as np
import pandas as pd

from models.report import ComparisonReport, TableRow
from models.simulation import RunResult

FLOAT_FORMAT = "%.6f"

TICK_COLUMNS = ["time_s", "function", "arrival_rps", "lrt_ms", "rt_ms", "millicores"]
SUMMARY_COLUMNS = ["function", "sla_ms", "mode", "rt_mu", "rt_sigma", "v_mu", "v_sigma", "c_mu", "c_sigma"]


class ReportView:
    """View for run outputs."""

    @staticmethod
    def ticks_frame(result: RunResult) -> pd.DataFrame:
        """Per-tick records in long form, ordered by time then function."""
        series = result.series
        n_ticks, n = series.lrt_ms.shape
        return pd.DataFrame({
            "time_s": np.repeat(series.time_s, n),
            "function": np.tile(np.asarray(series.functions, dtype=object), n_ticks),
            "arrival_rps": series.arrival_rps.reshape(-1),
            "lrt_ms": series.lrt_ms.reshape(-1),
            "rt_ms": series.rt_ms.reshape(-1),
            "millicores": series.millicores.reshape(-1),
        }, columns=TICK_COLUMNS)

    @staticmethod
    def summary_frame(rows: Sequence[TableRow]) -> pd.DataFrame:
        return pd.DataFrame([row.__dict__ for row in rows], columns=SUMMARY_COLUMNS)

    @staticmethod
    def allocations_frame(results: Sequence[RunResult], function: str) -> pd.DataFrame:
        """Window-mean allocation of one function, one column per replication."""
        columns: Dict[str, Any] = {}
        for result in results:
            series = result.series
            windows = series.windows(series.millicores)
            if "time_s" not in columns:
                columns["time_s"] = series.time_s[:: series.ticks_per_window][: windows.shape[0]]
            columns[f"r{result.replication}"] = windows[:, series.functions.index(function)]
        return pd.DataFrame(columns)

    @staticmethod
    def write_run(results: Sequence[RunResult], rows: Sequence[TableRow], directory: Path) -> List[Path]:
        """
        Write tick CSVs, per-function allocation series and the summary CSV
        of one mode's replications.

        Returns:
            Written paths, in writing order
        """
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for result in results:
            path = directory / f"ticks_r{result.replication:02d}.csv"
            _write_csv(ReportView.ticks_frame(result), path)
            written.append(path)
        if results:
            for function in results[0].series.functions:
                path = directory / f"allocations_{function}.csv"
                _write_csv(ReportView.allocations_frame(results, function), path)
                written.append(path)
        path = directory / "summary.csv"
        _write_csv(ReportView.summary_frame(rows), path)
        written.append(path)
        return written

    @staticmethod
    def format_table(rows: Sequence[TableRow]) -> str:
        """Per-function text table: RT, V and C as mu/sigma pairs."""
        frame = ReportView.summary_frame(rows)
        return frame.to_string(index=False, na_rep="-", float_format=lambda v: f"{v:.1f}")

    @staticmethod
    def format_side_by_side(rows_a: Sequence[TableRow], rows_b: Sequence[TableRow]) -> str:
        """Both modes next to each other, one line per function."""
        a = ReportView.summary_frame(rows_a).drop(columns=["mode"]).set_index(["function", "sla_ms"])
        b = ReportView.summary_frame(rows_b).drop(columns=["mode"]).set_index(["function", "sla_ms"])
        mode_a = rows_a[0].mode if rows_a else "a"
        mode_b = rows_b[0].mode if rows_b else "b"
        frame = pd.concat({mode_a: a, mode_b: b}, axis=1).reset_index()
        return frame.to_string(index=False, na_rep="-", float_format=lambda v: f"{v:.1f}")

    @staticmethod
    def comparison_frame(report: ComparisonReport) -> pd.DataFrame:
        return pd.DataFrame([row.__dict__ for row in report.rows])

    @staticmethod
    def format_comparison(report: ComparisonReport) -> str:
        header = f"{report.app}: {report.mode_a} vs {report.mode_b} ({report.replications} replications)"
        body = ReportView.comparison_frame(report).to_string(index=False, float_format=lambda v: f"{v:.1f}")
        return f"{header}\n{body}"

    @staticmethod
    def write_comparison(report: ComparisonReport, path: Path) -> Path:
        _write_csv(ReportView.comparison_frame(report), Path(path))
        return Path(path)

    @staticmethod
    def format_comparison_json(report: ComparisonReport) -> Dict[str, Any]:
        return report.as_dict()


def _write_csv(frame: pd.DataFrame, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
