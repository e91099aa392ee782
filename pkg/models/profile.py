"""Nominal (quiescent, reference-allocation) response times."""
from dataclasses import dataclass
from typing import Dict

# nlrt values are relative to this static allocation.
REFERENCE_MILLICORES = 1000


@dataclass(frozen=True)
class NominalProfile:
    """Per-function nominal local (nlrt) and composed total (nrt) times, in ms."""
    nlrt_ms: Dict[str, float]
    nrt_ms: Dict[str, float]

    def weight(self, name: str) -> float:
        """Share of a function's nominal response time spent in its own code."""
        return self.nlrt_ms[name] / self.nrt_ms[name]
