"""
Simulation Controller - the discrete-time closed loop.

Per tick: user rates -> fan-out over the DAG -> perf-model tick per
function -> response-time composition. At the end of every control period
each controller receives its window-mean measurement (local response time
in dependency-aware mode, total response time in baseline mode) and the
returned allocation applies to the next period.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from controllers.graph_controller import GraphController
from controllers.metrics_controller import MetricsController
from controllers.perf_controller import PerfController
from controllers.pi_controller import PIController
from controllers.setpoint_controller import SetpointController
from controllers.workload_controller import WorkloadController
from models.controller import ControlMode, ControllerConfig
from models.errors import ConfigError, DepallocError, SimulationAborted
from models.graph import AppGraph
from models.perf import PerfParams
from models.profile import NominalProfile
from models.setpoints import SetPointTable
from models.simulation import RunResult, SimulationConfig, SimulationMode, TickSeries
from models.workload import WorkloadSpec

logger = logging.getLogger(__name__)

Targets = Union[SetPointTable, Mapping[str, float]]

# reverse-topological composition plan: (column, [[(child column, multiplier), ...], ...])
_Plan = List[Tuple[int, List[List[Tuple[int, int]]]]]


class SimulationController:
    """Controller for closed-loop simulation runs."""

    @staticmethod
    def fan_out_requests(graph: AppGraph, user_rates: Mapping[str, float]) -> Dict[str, float]:
        """
        Total request rate per function: its own user rate plus m * rate of
        every caller.
        """
        rates: Dict[str, float] = {}
        for name in graph.order:
            rate = float(user_rates.get(name, 0.0))
            for edge in graph.in_edges[name]:
                rate += edge.multiplier * rates[edge.source]
            rates[name] = rate
        return rates

    @staticmethod
    def compose_rt(graph: AppGraph, lrt: Mapping[str, float]) -> Dict[str, float]:
        """Total response time per function from local response times."""
        return GraphController.compose(graph, lrt)

    @staticmethod
    def targets_for(
        graph: AppGraph,
        profile: NominalProfile,
        mode: SimulationMode,
        alpha: float,
    ) -> Targets:
        """Set-point table for dependency-aware runs, SLA table for baseline runs."""
        if mode == SimulationMode.DEPENDENCY_AWARE:
            return SetpointController.propagate(graph, profile, graph.entry_slas(), alpha)
        return graph.slas()

    @staticmethod
    def run(
        graph: AppGraph,
        perf: Mapping[str, PerfParams],
        targets: Targets,
        workloads: Mapping[str, WorkloadSpec],
        sim_config: SimulationConfig,
        controller_config: ControllerConfig,
        replication: int = 0,
        experiment: Optional[str] = None,
    ) -> RunResult:
        """
        Simulate one replication.

        Replication k draws every workload stream with seed
        workload.seed + master_seed + k.

        Raises:
            SimulationAborted: any failure, with tick and function context
        """
        names = list(graph.order)
        n = len(names)
        column = {name: i for i, name in enumerate(names)}
        for name in names:
            if name not in perf:
                raise ConfigError(f"no demand_core_ms for function {name!r}", function=name)
        for name in workloads:
            if name not in column or not graph.by_name[name].is_entrypoint:
                raise ConfigError(f"workload targets {name!r}, which is not an entrypoint", function=name)

        mode = ControlMode.LOCAL if sim_config.mode == SimulationMode.DEPENDENCY_AWARE else ControlMode.TOTAL
        config = controller_config.with_mode(mode)
        configs = {name: config.for_function(name) for name in names}
        states = PIController.make_controllers(graph, targets, config)

        seed = sim_config.master_seed + replication
        streams = {name: spec.with_seed((spec.seed + seed) % 2 ** 64) for name, spec in workloads.items()}

        n_ticks = sim_config.n_ticks
        per_period = sim_config.ticks_per_period
        dt = sim_config.dt_s
        time_s = np.arange(n_ticks) * sim_config.tick_ms / 1000.0

        arrivals = SimulationController._arrivals(graph, names, streams, time_s)
        demand = np.array([perf[name].demand_core_ms for name in names], dtype=float)
        cap = np.array([perf[name].utilization_cap for name in names], dtype=float)
        plan = SimulationController._plan(graph, column)

        lrt = np.zeros((n_ticks, n))
        rt = np.zeros((n_ticks, n))
        millicores = np.zeros((n_ticks, n))
        allocation = np.array([states[name].last_output_millicores for name in names], dtype=float)
        backlog = np.zeros(n)

        logger.debug("run %s/%s replication %d: %d ticks", graph.name, sim_config.mode.value, replication, n_ticks)
        for period in range(sim_config.n_periods):
            start, stop = period * per_period, (period + 1) * per_period
            for t in range(start, stop):
                backlog, lrt[t] = PerfController.tick_many(allocation, backlog, demand, cap, arrivals[t], dt)
                millicores[t] = allocation
            rt[start:stop] = _compose_block(plan, lrt[start:stop])

            measured = (lrt if mode == ControlMode.LOCAL else rt)[start:stop].mean(axis=0)
            load = arrivals[start:stop].mean(axis=0)
            for name in names:
                i = column[name]
                try:
                    if load[i] > 0:
                        states[name], output = PIController.pi_step(states[name], configs[name], float(measured[i]))
                    else:
                        states[name], output = PIController.idle(states[name], configs[name])
                except DepallocError as e:
                    raise SimulationAborted(e, tick=stop - 1, function=name)
                allocation[i] = output

        series = TickSeries(
            functions=names,
            time_s=time_s,
            arrival_rps=arrivals,
            lrt_ms=lrt,
            rt_ms=rt,
            millicores=millicores,
            ticks_per_window=per_period,
        )
        result = RunResult(
            app=graph.name,
            mode=sim_config.mode,
            seed=seed,
            replication=replication,
            series=series,
            experiment=experiment,
        )
        result.summary = MetricsController.summarize(series, graph.slas())
        return result

    @staticmethod
    def run_replications(
        graph: AppGraph,
        perf: Mapping[str, PerfParams],
        targets: Targets,
        workloads: Mapping[str, WorkloadSpec],
        sim_config: SimulationConfig,
        controller_config: ControllerConfig,
        jobs: int = 1,
        experiment: Optional[str] = None,
    ) -> List[RunResult]:
        """All replications of one grid cell, ordered by replication index."""
        args = [
            (graph, perf, targets, workloads, sim_config, controller_config, k, experiment)
            for k in range(sim_config.replications)
        ]
        if jobs <= 1:
            results = []
            for k, arg in enumerate(args):
                results.append(SimulationController.run(*arg))
                logger.info("%s %s: replication %d/%d done", graph.name, sim_config.mode.value, k + 1, len(args))
            return results
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_packed, args))
        logger.info("%s %s: %d replications done", graph.name, sim_config.mode.value, len(results))
        return results

    @staticmethod
    def _arrivals(
        graph: AppGraph,
        names: Sequence[str],
        streams: Mapping[str, WorkloadSpec],
        time_s: np.ndarray,
    ) -> np.ndarray:
        """Per-tick fanned-out arrival rates, shape (n_ticks, n_functions)."""
        column = {name: i for i, name in enumerate(names)}
        arrivals = np.zeros((len(time_s), len(names)))
        for name, spec in streams.items():
            arrivals[:, column[name]] = [WorkloadController.rate_at(spec, t) for t in time_s]
        for name in names:
            for edge in graph.in_edges[name]:
                arrivals[:, column[name]] += edge.multiplier * arrivals[:, column[edge.source]]
        return arrivals

    @staticmethod
    def _plan(graph: AppGraph, column: Mapping[str, int]) -> _Plan:
        plan = []
        for name in reversed(graph.order):
            groups = GraphController.invocation_groups(graph, name)
            plan.append((column[name], [[(column[child], m) for child, m in group] for group in groups]))
        return plan


def _compose_block(plan: _Plan, lrt: np.ndarray) -> np.ndarray:
    """Response-time composition applied row-wise to a block of ticks."""
    rt = np.empty_like(lrt)
    for i, groups in plan:
        value = lrt[:, i].copy()
        for group in groups:
            value += np.max([m * rt[:, j] for j, m in group], axis=0)
        rt[:, i] = value
    return rt


def _run_packed(args) -> RunResult:
    return SimulationController.run(*args)
