"""Tests for the closed-loop simulation."""
import unittest
from unittest import mock

import numpy as np
from hypothesis import given, settings

from controllers.experiment_controller import ExperimentController
from controllers.graph_controller import GraphController
from controllers.pi_controller import PIController
from controllers.profile_controller import ProfileController
from controllers.simulation_controller import SimulationController
from models.controller import ControllerConfig
from models.errors import ConfigError, NonPositiveMeasurement, SimulationAborted
from models.graph import DependencyEdge, FunctionSpec
from models.perf import PerfParams
from models.simulation import SimulationConfig, SimulationMode
from models.workload import WorkloadKind, WorkloadSpec
from test.fixtures import CONFIGS, dags, five_functions_graph

SHORT = SimulationConfig(duration_s=20, tick_ms=100, control_period_s=1.0, replications=2)
CONFIG = ControllerConfig(gain_p=1000, gain_i=4000, initial_millicores=1000)


def brute_force_rates(graph, user_rates):
    """Sum over every invocation path of user rate times the multipliers along it."""
    rates = {name: 0.0 for name in graph.names}

    def walk(name, rate):
        rates[name] += rate
        for edge in graph.out_edges[name]:
            walk(edge.target, rate * edge.multiplier)

    for name, rate in user_rates.items():
        walk(name, rate)
    return rates


def brute_force_total(graph, local, name):
    groups = {}
    for edge in graph.out_edges[name]:
        groups.setdefault(edge.group_id, []).append(edge)
    return local[name] + sum(
        max(e.multiplier * brute_force_total(graph, local, e.target) for e in group)
        for group in groups.values()
    )


def parent_child_graph():
    """a -> b where b also takes user requests."""
    return GraphController.build_graph(
        [FunctionSpec("a", sla_ms=100.0, is_entrypoint=True), FunctionSpec("b", sla_ms=40.0, is_entrypoint=True)],
        [DependencyEdge("a", "b", 1)],
        name="pair",
    )


class TestFanOutAndCompose(unittest.TestCase):
    """Test per-tick rate fan-out and response-time composition."""

    @settings(max_examples=1000)
    @given(dags(max_nodes=8, max_multiplier=3))
    def test_fan_out_matches_path_sum(self, case):
        """Test fanned-out rates against an explicit path enumeration."""
        graph, local = case
        user = {name: local[name] for name in graph.entrypoints()}

        rates = SimulationController.fan_out_requests(graph, user)
        expected = brute_force_rates(graph, user)

        for name in graph.names:
            self.assertAlmostEqual(rates[name], expected[name], delta=1e-12 * max(1.0, expected[name]))

    @settings(max_examples=1000)
    @given(dags(max_nodes=8, max_multiplier=3))
    def test_compose_matches_recursion(self, case):
        """Test composed response times against the recursive definition."""
        graph, local = case

        total = SimulationController.compose_rt(graph, local)

        for name in graph.names:
            expected = brute_force_total(graph, local, name)
            self.assertAlmostEqual(total[name], expected, delta=1e-12 * max(1.0, expected))

    def test_five_functions_rates(self):
        """Test user rates reach every descendant."""
        rates = SimulationController.fan_out_requests(five_functions_graph(), {"f1": 20.0, "f5": 5.0})

        self.assertEqual(rates, {"f1": 20.0, "f2": 20.0, "f3": 20.0, "f4": 20.0, "f5": 25.0})


class TestRun(unittest.TestCase):
    """Test complete simulation runs."""

    def setUp(self):
        self.graph = parent_child_graph()
        self.perf = {"a": PerfParams(4.0), "b": PerfParams(5.0)}
        self.profile = ProfileController.compose_nominal(self.graph, {"a": 4.0, "b": 5.0})

    def _run(self, mode, workloads, replication=0):
        sim = SimulationConfig(duration_s=60, tick_ms=100, control_period_s=1.0, replications=1, mode=mode)
        targets = SimulationController.targets_for(self.graph, self.profile, mode, 0.5)
        return SimulationController.run(self.graph, self.perf, targets, workloads, sim, CONFIG, replication)

    def test_series_shapes_and_summary(self):
        """Test one run records every tick and summarizes every function."""
        workloads = {"a": WorkloadSpec(WorkloadKind.CONSTANT, {"rps": 30})}

        result = self._run(SimulationMode.DEPENDENCY_AWARE, workloads)

        self.assertEqual(result.series.rt_ms.shape, (600, 2))
        self.assertEqual(result.series.ticks_per_window, 10)
        self.assertEqual(set(result.summary), {"a", "b"})
        self.assertEqual(result.app, "pair")

    def test_rt_is_composed_from_lrt(self):
        """Test every recorded tick satisfies the composition rule."""
        workloads = {"a": WorkloadSpec(WorkloadKind.CONSTANT, {"rps": 30})}
        series = self._run(SimulationMode.BASELINE, workloads).series

        for t in (0, 99, 599):
            lrt = dict(zip(series.functions, series.lrt_ms[t]))
            rt = SimulationController.compose_rt(self.graph, lrt)
            for i, name in enumerate(series.functions):
                self.assertAlmostEqual(series.rt_ms[t, i], rt[name])
        self.assertTrue(np.all(series.rt_ms >= series.lrt_ms))

    def test_zero_workload_releases_to_minimum(self):
        """Test idle functions drop to cores_min after the first period."""
        workloads = {"a": WorkloadSpec(WorkloadKind.CONSTANT, {"rps": 0})}

        series = self._run(SimulationMode.DEPENDENCY_AWARE, workloads).series

        self.assertTrue(np.all(series.millicores[:10] == 1000))
        self.assertTrue(np.all(series.millicores[10:] == 100))

    def test_child_load_does_not_move_parent_in_dependency_aware_mode(self):
        """Test the parent's allocation ignores extra load on its child."""
        base = {"a": WorkloadSpec(WorkloadKind.CONSTANT, {"rps": 30})}
        loaded = dict(base, b=WorkloadSpec(WorkloadKind.STEP, {"period_s": 10, "low_rps": 50, "high_rps": 150}, 3))

        alone = self._run(SimulationMode.DEPENDENCY_AWARE, base).series
        twin = self._run(SimulationMode.DEPENDENCY_AWARE, loaded).series

        col = alone.functions.index("a")
        self.assertTrue(np.array_equal(alone.millicores[:, col], twin.millicores[:, col]))
        self.assertFalse(np.array_equal(alone.millicores[:, 1 - col], twin.millicores[:, 1 - col]))

    def test_child_load_moves_parent_in_baseline_mode(self):
        """Test the baseline parent reacts to its child's response time."""
        base = {"a": WorkloadSpec(WorkloadKind.CONSTANT, {"rps": 30})}
        loaded = dict(base, b=WorkloadSpec(WorkloadKind.STEP, {"period_s": 10, "low_rps": 50, "high_rps": 150}, 3))

        alone = self._run(SimulationMode.BASELINE, base).series
        twin = self._run(SimulationMode.BASELINE, loaded).series

        col = alone.functions.index("a")
        self.assertFalse(np.array_equal(alone.millicores[:, col], twin.millicores[:, col]))

    def test_deterministic(self):
        """Test identical inputs give identical series."""
        workloads = {"a": WorkloadSpec(WorkloadKind.STEP, {"period_s": 5, "low_rps": 20, "high_rps": 120})}

        first = self._run(SimulationMode.DEPENDENCY_AWARE, workloads).series
        second = self._run(SimulationMode.DEPENDENCY_AWARE, workloads).series

        self.assertTrue(np.array_equal(first.millicores, second.millicores))
        self.assertTrue(np.array_equal(first.rt_ms, second.rt_ms))

    def test_replications_draw_different_streams(self):
        """Test replication k shifts every workload seed."""
        workloads = {"a": WorkloadSpec(WorkloadKind.STEP, {"period_s": 5, "low_rps": 20, "high_rps": 120})}

        first = self._run(SimulationMode.DEPENDENCY_AWARE, workloads, replication=0)
        second = self._run(SimulationMode.DEPENDENCY_AWARE, workloads, replication=1)

        self.assertEqual(second.seed, first.seed + 1)
        self.assertFalse(np.array_equal(first.series.arrival_rps, second.series.arrival_rps))

    def test_failures_carry_tick_and_function(self):
        """Test controller errors abort the run with context."""
        workloads = {"a": WorkloadSpec(WorkloadKind.CONSTANT, {"rps": 30})}

        with mock.patch.object(PIController, "pi_step", side_effect=NonPositiveMeasurement(0.0)):
            with self.assertRaises(SimulationAborted) as ctx:
                self._run(SimulationMode.DEPENDENCY_AWARE, workloads)

        self.assertEqual(ctx.exception.details["tick"], 9)
        self.assertEqual(ctx.exception.details["function"], "a")
        self.assertIsInstance(ctx.exception.cause, NonPositiveMeasurement)

    def test_missing_perf(self):
        """Test a function without demand is rejected before the run."""
        del self.perf["b"]

        with self.assertRaises(ConfigError):
            self._run(SimulationMode.DEPENDENCY_AWARE, {})

    def test_replications_are_ordered(self):
        """Test run_replications returns one result per replication."""
        targets = SimulationController.targets_for(self.graph, self.profile, SimulationMode.BASELINE, 0.5)
        sim = SimulationConfig(duration_s=5, replications=3, master_seed=10, mode=SimulationMode.BASELINE)

        results = SimulationController.run_replications(self.graph, self.perf, targets, {}, sim, CONFIG)

        self.assertEqual([r.replication for r in results], [0, 1, 2])
        self.assertEqual([r.seed for r in results], [10, 11, 12])


class TestConvergence(unittest.TestCase):
    """Test the dependency-aware loop settles at its local set points."""

    def test_five_functions_constant_load(self):
        """Test every function ends within 2% of its lsp under constant load."""
        bundle = ExperimentController.load(CONFIGS / "experiments" / "five_functions_constant.json")
        targets = SimulationController.targets_for(
            bundle.graph, bundle.profile, SimulationMode.DEPENDENCY_AWARE, bundle.controller.alpha
        )

        result = ExperimentController.run(bundle)[0]

        lrt = result.series.windows(result.series.lrt_ms)[-60:]
        for i, name in enumerate(result.series.functions):
            lsp = targets.lsp(name)
            self.assertTrue(np.all(np.abs(lrt[:, i] - lsp) <= 0.02 * lsp), name)


if __name__ == "__main__":
    unittest.main()
