"""Aggregated report rows."""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

OVERALL = "overall"


@dataclass(frozen=True)
class TableRow:
    """Per-function summary row: RT and cores pooled over all windows, V across replications."""
    function: str
    sla_ms: Optional[float]
    mode: str
    rt_mu: float
    rt_sigma: float
    v_mu: float
    v_sigma: float
    c_mu: float
    c_sigma: float


@dataclass(frozen=True)
class ComparisonRow:
    function: str
    cores_a: float
    cores_b: float
    cores_reduction_pct: float
    rt_delta_pct: float
    violation_delta_pp: float


@dataclass
class ComparisonReport:
    app: str
    mode_a: str
    mode_b: str
    replications: int
    rows: List[ComparisonRow] = field(default_factory=list)

    def row(self, function: str) -> ComparisonRow:
        return {r.function: r for r in self.rows}[function]

    @property
    def overall(self) -> ComparisonRow:
        return self.row(OVERALL)

    def as_dict(self) -> Dict:
        return {
            "app": self.app,
            "mode_a": self.mode_a,
            "mode_b": self.mode_b,
            "replications": self.replications,
            "rows": [r.__dict__ for r in self.rows],
        }
