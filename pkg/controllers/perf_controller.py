"""
Perf Controller - fluid processor-sharing model of a function instance.

Service rate at c cores is mu = c / (demand/1000) requests per second.
Measured local response time is the capped-utilization queueing delay
(demand/c) / (1 - min(rho, cap)) plus the time to drain the fluid backlog.
"""
from dataclasses import replace

import numpy as np

from models.perf import InstanceState, PerfParams


class PerfController:
    """Controller for per-tick performance dynamics."""

    @staticmethod
    def tick(state: InstanceState, params: PerfParams, arrival_rate: float, dt: float) -> InstanceState:
        """
        Advance one instance by dt seconds under a constant arrival rate.

        Returns:
            Updated state; last_lrt_ms holds the measured local response time
        """
        if arrival_rate < 0:
            raise ValueError(f"arrival_rate must be >= 0, got {arrival_rate}")
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        cores = state.allocated_millicores / 1000.0
        mu = cores / (params.demand_core_ms / 1000.0)
        rho = arrival_rate / mu
        backlog = max(0.0, state.backlog_requests + (arrival_rate - mu) * dt)
        lrt = (params.demand_core_ms / cores) / (1.0 - min(rho, params.utilization_cap)) + backlog / mu * 1000.0
        return replace(state, backlog_requests=backlog, last_lrt_ms=lrt)

    @staticmethod
    def tick_many(
        millicores: np.ndarray,
        backlog: np.ndarray,
        demand_core_ms: np.ndarray,
        utilization_cap: np.ndarray,
        arrival_rate: np.ndarray,
        dt: float,
    ):
        """
        Vectorized tick over all functions of a run; same formula as tick.

        Returns:
            (new backlog, measured lrt in ms)
        """
        if np.any(arrival_rate < 0):
            raise ValueError("arrival rates must be >= 0")
        cores = millicores / 1000.0
        mu = cores / (demand_core_ms / 1000.0)
        rho = arrival_rate / mu
        new_backlog = np.maximum(0.0, backlog + (arrival_rate - mu) * dt)
        lrt = (demand_core_ms / cores) / (1.0 - np.minimum(rho, utilization_cap)) + new_backlog / mu * 1000.0
        return new_backlog, lrt

    @staticmethod
    def steady_state_millicores(params: PerfParams, arrival_rate: float, target_lrt_ms: float) -> float:
        """
        Allocation at which a drained instance measures target_lrt_ms, valid
        while rho stays under the utilization cap. Used as a test oracle.
        """
        return 1000.0 * params.demand_core_ms / target_lrt_ms + arrival_rate * params.demand_core_ms
