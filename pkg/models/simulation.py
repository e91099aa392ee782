"""Simulation configuration and results."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

import numpy as np


class SimulationMode(str, Enum):
    DEPENDENCY_AWARE = "dependency_aware"
    BASELINE = "baseline"


@dataclass(frozen=True)
class SimulationConfig:
    duration_s: float = 1200.0
    tick_ms: float = 100.0
    control_period_s: float = 1.0
    replications: int = 10
    master_seed: int = 0
    mode: SimulationMode = SimulationMode.DEPENDENCY_AWARE

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.tick_ms <= 0 or self.control_period_s <= 0 or self.duration_s <= 0:
            raise ValueError("durations must be positive")
        if not _is_multiple(self.control_period_s * 1000.0, self.tick_ms):
            raise ValueError("control_period_s must be a multiple of tick_ms")
        if not _is_multiple(self.duration_s, self.control_period_s):
            raise ValueError("duration_s must be a multiple of control_period_s")

    @property
    def ticks_per_period(self) -> int:
        return int(round(self.control_period_s * 1000.0 / self.tick_ms))

    @property
    def n_periods(self) -> int:
        return int(round(self.duration_s / self.control_period_s))

    @property
    def n_ticks(self) -> int:
        return self.n_periods * self.ticks_per_period

    @property
    def dt_s(self) -> float:
        return self.tick_ms / 1000.0


def _is_multiple(value: float, unit: float) -> bool:
    ratio = value / unit
    return abs(ratio - round(ratio)) < 1e-9 and round(ratio) >= 1


@dataclass
class TickSeries:
    """
    Per-tick records, one column per function (same order as `functions`).
    All arrays have shape (n_ticks, n_functions).
    """
    functions: List[str]
    time_s: np.ndarray
    arrival_rps: np.ndarray
    lrt_ms: np.ndarray
    rt_ms: np.ndarray
    millicores: np.ndarray
    ticks_per_window: int = 1

    def windows(self, values: np.ndarray) -> np.ndarray:
        """Window means, shape (n_windows, n_functions)."""
        n_windows = values.shape[0] // self.ticks_per_window
        trimmed = values[: n_windows * self.ticks_per_window]
        return trimmed.reshape(n_windows, self.ticks_per_window, -1).mean(axis=1)


@dataclass(frozen=True)
class FunctionSummary:
    rt_mean_ms: float
    rt_std_ms: float
    cores_mean_millicores: float
    cores_std_millicores: float
    violation_pct: float
    no_sla: bool = False


@dataclass
class RunResult:
    app: str
    mode: SimulationMode
    seed: int
    replication: int
    series: TickSeries
    summary: Dict[str, FunctionSummary] = field(default_factory=dict)
    experiment: Optional[str] = None
