"""Tests for nominal profiles."""
import json
import tempfile
import unittest
from pathlib import Path

from hypothesis import given, strategies as st

from controllers.graph_controller import GraphController
from controllers.profile_controller import ProfileController
from models.errors import ConfigError, MissingProfileEntry
from test.fixtures import CONFIGS, FIVE_FUNCTIONS_NLRT, dags, five_functions_graph


def brute_force_total(graph, local, name):
    """Independent recursive evaluator over the raw edge list."""
    groups = {}
    for edge in graph.edges:
        if edge.source == name:
            groups.setdefault(edge.group_id, []).append(edge)
    return local[name] + sum(
        max(e.multiplier * brute_force_total(graph, local, e.target) for e in members)
        for members in groups.values()
    )


class TestComposeNominal(unittest.TestCase):
    """Test composition of nominal response times."""

    def test_five_functions_nominal_times(self):
        """Test nrt of the worked example."""
        profile = ProfileController.compose_nominal(five_functions_graph(), FIVE_FUNCTIONS_NLRT)

        self.assertEqual(profile.nrt_ms, {"f1": 15.0, "f2": 6.0, "f3": 2.0, "f4": 2.0, "f5": 3.0})
        self.assertAlmostEqual(profile.weight("f1"), 7.0 / 15.0)

    def test_parallel_group_takes_the_slowest(self):
        """Test a parallel group contributes its maximum, scaled by multiplier."""
        graph, _ = GraphController.load(CONFIGS / "apps" / "sockshop.json")
        nlrt = {"orders": 8, "catalogue": 6, "shipping": 2, "users": 4, "payment": 3, "cart-utils": 5, "cart-del": 3}

        profile = ProfileController.compose_nominal(graph, nlrt)

        self.assertEqual(profile.nrt_ms["orders"], 8 + 5 + 3 + 3 + 6)

    def test_missing_entry(self):
        """Test a function without nlrt raises MissingProfileEntry."""
        nlrt = dict(FIVE_FUNCTIONS_NLRT)
        del nlrt["f4"]

        with self.assertRaises(MissingProfileEntry) as ctx:
            ProfileController.compose_nominal(five_functions_graph(), nlrt)
        self.assertEqual(ctx.exception.details["function"], "f4")

    def test_non_positive_entry(self):
        """Test zero nlrt is rejected."""
        nlrt = dict(FIVE_FUNCTIONS_NLRT, f3=0.0)

        with self.assertRaises(ConfigError):
            ProfileController.compose_nominal(five_functions_graph(), nlrt)

    @given(dags(max_nodes=10, max_multiplier=3))
    def test_matches_brute_force(self, sample):
        """Test composition equals a recursive evaluator on random DAGs."""
        graph, local = sample

        profile = ProfileController.compose_nominal(graph, local)

        for name in graph.names:
            expected = brute_force_total(graph, local, name)
            self.assertLessEqual(abs(profile.nrt_ms[name] - expected), 1e-9 * expected)

    @given(dags(max_nodes=10, max_multiplier=3), st.data())
    def test_monotone_in_local_times(self, sample, data):
        """Test a slower function never makes any nominal total faster."""
        graph, local = sample
        slower = data.draw(st.sampled_from(sorted(graph.names)))
        bumped = dict(local, **{slower: local[slower] + data.draw(st.floats(0.0, 100.0))})

        before = ProfileController.compose_nominal(graph, local)
        after = ProfileController.compose_nominal(graph, bumped)

        for name in graph.names:
            self.assertGreaterEqual(after.nrt_ms[name], before.nrt_ms[name])


class TestProfiling(unittest.TestCase):
    """Test profiling through the performance model."""

    def test_profile_via_simulation_recovers_demand(self):
        """Test one-at-a-time profiling at one core measures the demand."""
        graph, perf = GraphController.load(CONFIGS / "apps" / "hotel_reservation.json")

        nlrt = ProfileController.profile_via_simulation(graph, perf, warmup_requests=5, sample_requests=10)

        for name, params in perf.items():
            self.assertAlmostEqual(nlrt[name], params.demand_core_ms)

    def test_profile_scales_with_allocation(self):
        """Test half a core doubles the measured local time."""
        graph, perf = GraphController.load(CONFIGS / "apps" / "five_functions.json")

        nlrt = ProfileController.profile_via_simulation(graph, perf, millicores=500)

        self.assertAlmostEqual(nlrt["f1"], 14.0)

    def test_missing_perf_params(self):
        """Test profiling needs perf params for every function."""
        with self.assertRaises(MissingProfileEntry):
            ProfileController.profile_via_simulation(five_functions_graph(), {})

    def test_profile_file_round_trip(self):
        """Test writing and reading a profile file."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "profile.json"
            path.write_text(json.dumps(ProfileController.to_document(FIVE_FUNCTIONS_NLRT)))

            self.assertEqual(ProfileController.load(path), FIVE_FUNCTIONS_NLRT)

    def test_invalid_profile_file(self):
        """Test a profile entry without nlrt_ms is a configuration error."""
        with self.assertRaises(ConfigError):
            ProfileController.from_document({"f1": {"nlrt": 3}})


if __name__ == "__main__":
    unittest.main()
