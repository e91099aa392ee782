"""User request-rate generators."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict


class WorkloadKind(str, Enum):
    RAMP = "ramp"
    STEP = "step"
    BOTTLENECK_STEP = "bottleneck_step"
    CONSTANT = "constant"


@dataclass(frozen=True)
class WorkloadSpec:
    """
    kind-specific params:
      ramp: start_rps, increment_rps_per_s, max_rps
      step / bottleneck_step: period_s, low_rps, high_rps
      constant: rps
    """
    kind: WorkloadKind
    params: Dict[str, float] = field(default_factory=dict)
    seed: int = 0

    def with_seed(self, seed: int) -> "WorkloadSpec":
        return WorkloadSpec(kind=self.kind, params=self.params, seed=seed)
