"""
Profile Controller - nominal response times under quiescent conditions.
"""
import json
import logging
from pathlib import Path
from typing import Dict, Mapping

from pydantic import ValidationError as SchemaError

from controllers.graph_controller import GraphController
from controllers.perf_controller import PerfController
from models.errors import ConfigError, MissingProfileEntry
from models.graph import AppGraph
from models.perf import InstanceState, PerfParams
from models.profile import REFERENCE_MILLICORES, NominalProfile
from models.schemas import ProfileFile

logger = logging.getLogger(__name__)


class ProfileController:
    """Controller for nominal profiles."""

    @staticmethod
    def compose_nominal(graph: AppGraph, nlrt: Mapping[str, float]) -> NominalProfile:
        """
        Compose nominal total response times from nominal local ones.

        Raises:
            MissingProfileEntry: a function has no nlrt value
        """
        for name in graph.names:
            if name not in nlrt:
                raise MissingProfileEntry(name)
            if not nlrt[name] > 0:
                raise ConfigError(f"nlrt of {name!r} must be positive", function=name)
        local = {name: float(nlrt[name]) for name in graph.names}
        return NominalProfile(nlrt_ms=local, nrt_ms=GraphController.compose(graph, local))

    @staticmethod
    def profile_via_simulation(
        graph: AppGraph,
        perf: Mapping[str, PerfParams],
        warmup_requests: int = 0,
        sample_requests: int = 100,
        millicores: int = REFERENCE_MILLICORES,
    ) -> Dict[str, float]:
        """
        Measure each function's local response time with one request at a
        time at a static allocation, after discarding warmup_requests.

        Returns:
            Mean measured local response time per function, in ms
        """
        nlrt = {}
        for name in graph.names:
            if name not in perf:
                raise MissingProfileEntry(name)
            params = perf[name]
            state = InstanceState(allocated_millicores=millicores)
            samples = []
            for i in range(warmup_requests + sample_requests):
                # one request in flight, zero queueing: arrival rate tends to 0
                state = PerfController.tick(state, params, arrival_rate=0.0, dt=params.demand_core_ms / 1000.0)
                if i >= warmup_requests:
                    samples.append(state.last_lrt_ms)
            nlrt[name] = sum(samples) / len(samples) if samples else params.demand_core_ms
            logger.debug("profiled %s: nlrt=%.3f ms", name, nlrt[name])
        return nlrt

    @staticmethod
    def load(path) -> Dict[str, float]:
        """Read a profile file: {"<function>": {"nlrt_ms": <number>}}."""
        path = Path(path)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read profile file {str(path)!r}: {e}")
        return ProfileController.from_document(document)

    @staticmethod
    def from_document(document) -> Dict[str, float]:
        try:
            parsed = ProfileFile.model_validate(document)
        except SchemaError as e:
            raise ConfigError("invalid profile file", problems=[str(err["msg"]) for err in e.errors()])
        return {name: entry.nlrt_ms for name, entry in parsed.root.items()}

    @staticmethod
    def to_document(nlrt: Mapping[str, float]) -> Dict[str, Dict[str, float]]:
        return {name: {"nlrt_ms": value} for name, value in nlrt.items()}
