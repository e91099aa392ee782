"""
Setpoint View - set-point reports with provenance.
"""
from typing import Any, Dict, List

import pandas as pd

from models.graph import AppGraph
from models.profile import NominalProfile
from models.setpoints import SetPointTable


class SetpointView:
    """View for set-point tables."""

    @staticmethod
    def format_rows(graph: AppGraph, table: SetPointTable, profile: NominalProfile) -> List[Dict[str, Any]]:
        """One row per function in topological order."""
        rows = []
        for name in graph.order:
            entry = table.entries[name]
            rows.append({
                "function": name,
                "sla_ms": graph.by_name[name].sla_ms,
                "nlrt_ms": profile.nlrt_ms[name],
                "nrt_ms": profile.nrt_ms[name],
                "sp_ms": entry.sp_ms,
                "lsp_ms": entry.lsp_ms,
                "source": entry.source.value,
            })
        return rows

    @staticmethod
    def format_report(graph: AppGraph, table: SetPointTable, profile: NominalProfile) -> Dict[str, Any]:
        """JSON response body."""
        return {
            "app": graph.name,
            "alpha": table.alpha,
            "setpoints": SetpointView.format_rows(graph, table, profile),
        }

    @staticmethod
    def format_text(graph: AppGraph, table: SetPointTable, profile: NominalProfile) -> str:
        frame = pd.DataFrame(SetpointView.format_rows(graph, table, profile))
        return frame.to_string(index=False, na_rep="-", float_format=lambda v: f"{v:.3f}")

    @staticmethod
    def format_csv(graph: AppGraph, table: SetPointTable, profile: NominalProfile) -> str:
        frame = pd.DataFrame(SetpointView.format_rows(graph, table, profile))
        return frame.to_csv(index=False, float_format="%.6f", lineterminator="\n")
