"""Tests for workload generation."""
import unittest

from hypothesis import given, strategies as st

from controllers.workload_controller import WorkloadController
from models.errors import ConfigError
from models.workload import WorkloadKind, WorkloadSpec

RAMP = WorkloadSpec(WorkloadKind.RAMP, {"start_rps": 10, "increment_rps_per_s": 1, "max_rps": 100})
STEP = WorkloadSpec(WorkloadKind.STEP, {"period_s": 50, "low_rps": 20, "high_rps": 120}, seed=7)


class TestRateAt(unittest.TestCase):
    """Test request rates over time."""

    def test_ramp(self):
        """Test the ramp starts at 10, adds one per second and stops at 100."""
        self.assertEqual(WorkloadController.rate_at(RAMP, 0.0), 10)
        self.assertEqual(WorkloadController.rate_at(RAMP, 0.9), 10)
        self.assertEqual(WorkloadController.rate_at(RAMP, 5.0), 15)
        self.assertEqual(WorkloadController.rate_at(RAMP, 90.0), 100)
        self.assertEqual(WorkloadController.rate_at(RAMP, 1000.0), 100)

    def test_constant(self):
        """Test a constant workload."""
        spec = WorkloadSpec(WorkloadKind.CONSTANT, {"rps": 42})

        self.assertEqual(WorkloadController.rate_at(spec, 123.4), 42)

    def test_step_constant_within_interval(self):
        """Test the step level holds for a whole period."""
        first = WorkloadController.rate_at(STEP, 0.0)

        self.assertEqual(WorkloadController.rate_at(STEP, 49.9), first)
        self.assertTrue(20 <= first <= 120)

    def test_step_random_access(self):
        """Test an interval's level does not depend on query order."""
        late_first = WorkloadController.rate_at(STEP, 1000.0)
        for t in range(0, 1000, 50):
            WorkloadController.rate_at(STEP, float(t))

        self.assertEqual(WorkloadController.rate_at(STEP, 1000.0), late_first)

    def test_step_seeds_differ(self):
        """Test different seeds give different step sequences."""
        other = STEP.with_seed(8)

        levels = [WorkloadController.rate_at(STEP, 50.0 * k) for k in range(24)]
        other_levels = [WorkloadController.rate_at(other, 50.0 * k) for k in range(24)]

        self.assertNotEqual(levels, other_levels)

    @given(st.floats(0, 1200), st.integers(0, 2 ** 64 - 1))
    def test_bottleneck_step_in_range(self, t, seed):
        """Test bottleneck steps stay within their bounds."""
        spec = WorkloadSpec(WorkloadKind.BOTTLENECK_STEP, {"period_s": 50, "low_rps": 800, "high_rps": 6000}, seed)

        rate = WorkloadController.rate_at(spec, t)

        self.assertGreaterEqual(rate, 800)
        self.assertLessEqual(rate, 6000)

    def test_rates_at(self):
        """Test rates for several entrypoints at once."""
        rates = WorkloadController.rates_at({"a": RAMP, "b": STEP}, 3.0)

        self.assertEqual(rates["a"], 13)
        self.assertEqual(set(rates), {"a", "b"})


class TestValidate(unittest.TestCase):
    """Test workload validation."""

    def test_missing_parameter(self):
        """Test a ramp without max_rps is rejected."""
        spec = WorkloadSpec(WorkloadKind.RAMP, {"start_rps": 10, "increment_rps_per_s": 1})

        with self.assertRaises(ConfigError) as ctx:
            WorkloadController.validate(spec)
        self.assertEqual(ctx.exception.details["missing"], ["max_rps"])

    def test_inverted_bounds(self):
        """Test low_rps above high_rps is rejected."""
        spec = WorkloadSpec(WorkloadKind.STEP, {"period_s": 50, "low_rps": 200, "high_rps": 100})

        with self.assertRaises(ConfigError):
            WorkloadController.validate(spec)

    def test_negative_rate(self):
        """Test negative rates are rejected."""
        with self.assertRaises(ConfigError):
            WorkloadController.validate(WorkloadSpec(WorkloadKind.CONSTANT, {"rps": -1}))

    def test_negative_ramp_increment(self):
        """Test a decreasing ramp is rejected before it can go below zero."""
        spec = WorkloadSpec(WorkloadKind.RAMP, {"start_rps": 10, "increment_rps_per_s": -1, "max_rps": 100})

        with self.assertRaises(ConfigError) as ctx:
            WorkloadController.validate(spec)
        self.assertEqual(ctx.exception.details["negative"], ["increment_rps_per_s"])

    @given(
        st.floats(-50, 50, allow_nan=False),
        st.floats(-50, 50, allow_nan=False),
        st.floats(0, 200, allow_nan=False),
        st.floats(0, 1200, allow_nan=False),
    )
    def test_accepted_ramps_never_go_negative(self, start, increment, maximum, t):
        """Test every ramp that passes validation yields non-negative rates."""
        spec = WorkloadSpec(WorkloadKind.RAMP, {"start_rps": start, "increment_rps_per_s": increment, "max_rps": maximum})
        try:
            WorkloadController.validate(spec)
        except ConfigError:
            self.assertTrue(start < 0 or increment < 0)
            return

        self.assertGreaterEqual(WorkloadController.rate_at(spec, t), 0.0)


if __name__ == "__main__":
    unittest.main()
