"""
Workload Controller - user request rates over time.

Step workloads draw the level of interval k from a Philox4x64 counter-based
generator keyed by the workload seed with counter k, so any interval can be
evaluated independently of query order.
"""
import math
from functools import lru_cache
from typing import Dict, Mapping

import numpy as np

from models.errors import ConfigError
from models.workload import WorkloadKind, WorkloadSpec

_REQUIRED = {
    WorkloadKind.RAMP: ("start_rps", "increment_rps_per_s", "max_rps"),
    WorkloadKind.STEP: ("period_s", "low_rps", "high_rps"),
    WorkloadKind.BOTTLENECK_STEP: ("period_s", "low_rps", "high_rps"),
    WorkloadKind.CONSTANT: ("rps",),
}


class WorkloadController:
    """Controller for workload generation."""

    @staticmethod
    def validate(spec: WorkloadSpec) -> WorkloadSpec:
        missing = [key for key in _REQUIRED[spec.kind] if key not in spec.params]
        if missing:
            raise ConfigError(f"{spec.kind.value} workload is missing {', '.join(missing)}", missing=missing)
        negative = sorted(key for key, value in spec.params.items() if "rps" in key and value < 0)
        if negative:
            raise ConfigError("workload rates must be >= 0", negative=negative)
        if spec.kind in (WorkloadKind.STEP, WorkloadKind.BOTTLENECK_STEP):
            if spec.params["period_s"] <= 0:
                raise ConfigError("period_s must be positive")
            if spec.params["low_rps"] > spec.params["high_rps"]:
                raise ConfigError("low_rps must not exceed high_rps")
        if not 0 <= spec.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        return spec

    @staticmethod
    def rate_at(spec: WorkloadSpec, t: float) -> float:
        """User requests per second at time t (seconds, t >= 0)."""
        p = spec.params
        if spec.kind == WorkloadKind.CONSTANT:
            return float(p["rps"])
        if spec.kind == WorkloadKind.RAMP:
            return float(min(p["max_rps"], p["start_rps"] + p["increment_rps_per_s"] * math.floor(t)))
        interval = int(math.floor(t / p["period_s"]))
        return p["low_rps"] + (p["high_rps"] - p["low_rps"]) * _uniform(spec.seed, interval)

    @staticmethod
    def rates_at(workloads: Mapping[str, WorkloadSpec], t: float) -> Dict[str, float]:
        return {name: WorkloadController.rate_at(spec, t) for name, spec in workloads.items()}


@lru_cache(maxsize=65536)
def _uniform(seed: int, position: int) -> float:
    """Uniform draw in [0, 1) at stream position `position`."""
    generator = np.random.Generator(np.random.Philox(key=seed, counter=position))
    return float(generator.random())
