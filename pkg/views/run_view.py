"""
Run View - formats stored run summaries for API responses.
"""
from typing import Any, Dict, List, Optional

from models import FunctionSummaryRecord, RunRecord


class RunView:
    """View for formatting stored runs as JSON responses."""

    @staticmethod
    def format_run(run: RunRecord) -> Optional[Dict[str, Any]]:
        """
        Format a stored run with its per-function summaries.

        Args:
            run: RunRecord model instance

        Returns:
            Dictionary representation of the run
        """
        if not run:
            return None

        return {
            "id": run.id,
            "experiment": run.experiment,
            "app": run.app,
            "mode": run.mode,
            "seed": run.seed,
            "replication": run.replication,
            "duration_s": run.duration_s,
            "functions": [RunView.format_function(f) for f in run.functions],
        }

    @staticmethod
    def format_function(summary: FunctionSummaryRecord) -> Dict[str, Any]:
        return {
            "function": summary.function,
            "sla_ms": summary.sla_ms,
            "rt_mean_ms": summary.rt_mean_ms,
            "rt_std_ms": summary.rt_std_ms,
            "cores_mean_millicores": summary.cores_mean_millicores,
            "cores_std_millicores": summary.cores_std_millicores,
            "violation_pct": summary.violation_pct,
            "no_sla": summary.no_sla,
        }

    @staticmethod
    def format_runs(runs: List[RunRecord]) -> List[Dict[str, Any]]:
        return [RunView.format_run(run) for run in runs]

    @staticmethod
    def format_app_response(app_name: str, runs: List[RunRecord]) -> Dict[str, Any]:
        """
        Format response for the runs-by-app endpoint.

        Args:
            app_name: Name of the application
            runs: List of RunRecord model instances

        Returns:
            Formatted response with app name, count, and runs
        """
        return {
            "app": app_name,
            "total_runs": len(runs),
            "runs": RunView.format_runs(runs),
        }
