"""PI controller configuration and state."""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Optional, Tuple


class ControlMode(str, Enum):
    LOCAL = "local"  # dependency-aware: local response time against lsp
    TOTAL = "total"  # baseline: total response time against alpha * SLA


@dataclass(frozen=True)
class ControllerConfig:
    gain_p: float
    gain_i: float
    cores_min_millicores: int = 100
    cores_max_millicores: int = 8000
    period_s: float = 1.0
    mode: ControlMode = ControlMode.LOCAL
    alpha: float = 0.5
    initial_millicores: Optional[int] = None
    function_gains: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.cores_min_millicores <= self.cores_max_millicores:
            raise ValueError("cores bounds must satisfy 0 < cores_min <= cores_max")
        if self.period_s <= 0:
            raise ValueError("period_s must be positive")

    def for_function(self, name: str) -> "ControllerConfig":
        """Config with the function's tuned gains applied, if any."""
        if name not in self.function_gains:
            return self
        gain_p, gain_i = self.function_gains[name]
        return replace(self, gain_p=gain_p, gain_i=gain_i, function_gains={})

    def with_mode(self, mode: ControlMode) -> "ControllerConfig":
        return replace(self, mode=mode)


@dataclass(frozen=True)
class ControllerState:
    integral_accumulator: float
    set_point_ms: float
    last_output_millicores: int
