"""
Experiment Controller - loads experiment files into validated bundles.

Paths inside an experiment file (app, profile) are relative to the file.
"""
import json
import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError as SchemaError

from controllers.graph_controller import GraphController
from controllers.profile_controller import ProfileController
from controllers.simulation_controller import SimulationController
from controllers.workload_controller import WorkloadController
from models.controller import ControlMode, ControllerConfig
from models.errors import ConfigError, UnknownFunction
from models.graph import AppGraph
from models.perf import PerfParams
from models.profile import NominalProfile
from models.schemas import ExperimentFile
from models.simulation import RunResult, SimulationConfig, SimulationMode
from models.workload import WorkloadSpec

logger = logging.getLogger(__name__)

OUT_DIR_ENV = "DEPALLOC_OUT_DIR"


@dataclass(frozen=True)
class ExperimentBundle:
    """Everything one experiment needs, validated before any run starts."""
    name: str
    graph: AppGraph
    profile: NominalProfile
    perf: Dict[str, PerfParams]
    workloads: Dict[str, WorkloadSpec]
    controller: ControllerConfig
    simulation: SimulationConfig
    output_dir: Path

    def with_mode(self, mode: SimulationMode) -> "ExperimentBundle":
        return replace(self, simulation=replace(self.simulation, mode=mode))

    def with_master_seed(self, seed: int) -> "ExperimentBundle":
        return replace(self, simulation=replace(self.simulation, master_seed=seed))


class ExperimentController:
    """Controller for experiment files."""

    @staticmethod
    def load(path, out_dir: Optional[str] = None) -> ExperimentBundle:
        """
        Load an experiment file.

        Args:
            path: experiment JSON file
            out_dir: output directory override; DEPALLOC_OUT_DIR applies
                when not given

        Raises:
            ConfigError and the graph/profile validation errors
        """
        path = Path(path)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read experiment file {str(path)!r}: {e}")
        return ExperimentController.from_document(document, path.parent, out_dir)

    @staticmethod
    def from_document(document: Dict[str, Any], base_dir=".", out_dir: Optional[str] = None) -> ExperimentBundle:
        base_dir = Path(base_dir)
        try:
            parsed = ExperimentFile.model_validate(document)
        except SchemaError as e:
            raise ConfigError(
                "invalid experiment file",
                problems=[f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()],
            )

        graph, perf = GraphController.load(base_dir / parsed.app)

        if isinstance(parsed.profile, str):
            nlrt = ProfileController.load(base_dir / parsed.profile)
        elif parsed.profile is not None:
            nlrt = {name: entry.nlrt_ms for name, entry in parsed.profile.items()}
        else:
            logger.info("no profile given for %s, profiling by simulation", graph.name)
            nlrt = ProfileController.profile_via_simulation(graph, perf)
        for name in nlrt:
            if name not in graph.by_name:
                raise UnknownFunction(name)
        profile = ProfileController.compose_nominal(graph, nlrt)

        workloads = {}
        for name, entry in parsed.workloads.items():
            if name not in graph.by_name:
                raise UnknownFunction(name)
            if not graph.by_name[name].is_entrypoint:
                raise ConfigError(f"workload targets {name!r}, which is not an entrypoint", function=name)
            workloads[name] = WorkloadController.validate(
                WorkloadSpec(kind=entry.kind, params=dict(entry.params), seed=entry.seed)
            )

        c = parsed.controller
        for name in c.function_gains:
            if name not in graph.by_name:
                raise UnknownFunction(name)
        try:
            controller = ControllerConfig(
                gain_p=c.gain_p,
                gain_i=c.gain_i,
                cores_min_millicores=c.cores_min_millicores,
                cores_max_millicores=c.cores_max_millicores,
                period_s=c.period_s,
                alpha=c.alpha,
                initial_millicores=c.initial_millicores,
                function_gains={name: (g.gain_p, g.gain_i) for name, g in c.function_gains.items()},
            )
            s = parsed.simulation
            mode = s.mode
            if c.mode is not None:
                # controller mode, when given, wins over the simulation mode
                mode = SimulationMode.DEPENDENCY_AWARE if c.mode == ControlMode.LOCAL else SimulationMode.BASELINE
            simulation = SimulationConfig(
                duration_s=s.duration_s,
                tick_ms=s.tick_ms,
                control_period_s=c.period_s,
                replications=s.replications,
                master_seed=s.master_seed,
                mode=mode,
            )
        except ValueError as e:
            raise ConfigError(str(e))

        output_dir = Path(out_dir or os.getenv(OUT_DIR_ENV) or base_dir / parsed.output_dir)
        logger.debug("loaded experiment %s (app %s)", parsed.name, graph.name)
        return ExperimentBundle(
            name=parsed.name,
            graph=graph,
            profile=profile,
            perf=perf,
            workloads=workloads,
            controller=controller,
            simulation=simulation,
            output_dir=output_dir,
        )

    @staticmethod
    def run(bundle: ExperimentBundle, jobs: int = 1) -> List[RunResult]:
        """All replications of the bundle in its simulation mode."""
        targets = SimulationController.targets_for(
            bundle.graph, bundle.profile, bundle.simulation.mode, bundle.controller.alpha
        )
        return SimulationController.run_replications(
            bundle.graph,
            bundle.perf,
            targets,
            bundle.workloads,
            bundle.simulation,
            bundle.controller,
            jobs=jobs,
            experiment=bundle.name,
        )
