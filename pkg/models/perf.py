"""Performance model parameters and per-function runtime state."""
from dataclasses import dataclass

DEFAULT_UTILIZATION_CAP = 0.99


@dataclass(frozen=True)
class PerfParams:
    """
    demand_core_ms is the CPU time a request needs on one full core, so it
    equals the nominal local response time at the reference allocation.
    """
    demand_core_ms: float
    utilization_cap: float = DEFAULT_UTILIZATION_CAP

    def __post_init__(self):
        if not self.demand_core_ms > 0:
            raise ValueError(f"demand_core_ms must be positive, got {self.demand_core_ms}")
        if not 0 < self.utilization_cap < 1:
            raise ValueError(f"utilization_cap must be in (0, 1), got {self.utilization_cap}")


@dataclass(frozen=True)
class InstanceState:
    """Fluid state of one function instance after a tick."""
    allocated_millicores: int
    backlog_requests: float = 0.0
    last_lrt_ms: float = 0.0
    last_rt_ms: float = 0.0
