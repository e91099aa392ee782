"""
File schemas for application, profile and experiment JSON documents.

Unknown keys are rejected everywhere.
"""
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, RootModel

from models.controller import ControlMode
from models.perf import DEFAULT_UTILIZATION_CAP
from models.simulation import SimulationMode
from models.workload import WorkloadKind


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class FunctionEntry(_Strict):
    name: str
    sla_ms: Optional[float] = None
    entrypoint: bool = False
    demand_core_ms: Optional[float] = None
    utilization_cap: float = DEFAULT_UTILIZATION_CAP


class EdgeEntry(_Strict):
    source: str = Field(alias="from")
    target: str = Field(alias="to")
    group_id: int = 1
    multiplier: int = 1


class AppFile(_Strict):
    name: str = "app"
    description: Optional[str] = None
    reconstructed: bool = False
    functions: List[FunctionEntry]
    edges: List[EdgeEntry] = Field(default_factory=list)


class ProfileEntry(_Strict):
    nlrt_ms: float


class ProfileFile(RootModel[Dict[str, ProfileEntry]]):
    pass


class WorkloadEntry(_Strict):
    kind: WorkloadKind
    params: Dict[str, float] = Field(default_factory=dict)
    seed: int = 0


class GainEntry(_Strict):
    gain_p: float
    gain_i: float


class ControllerEntry(_Strict):
    gain_p: float
    gain_i: float
    cores_min_millicores: int = 100
    cores_max_millicores: int = 8000
    period_s: float = 1.0
    mode: Optional[ControlMode] = None
    alpha: float = 0.5
    initial_millicores: Optional[int] = None
    function_gains: Dict[str, GainEntry] = Field(default_factory=dict)


class SimulationEntry(_Strict):
    duration_s: float = 1200.0
    tick_ms: float = 100.0
    replications: int = 10
    master_seed: int = 0
    mode: SimulationMode = SimulationMode.DEPENDENCY_AWARE


class ExperimentFile(_Strict):
    name: str = "experiment"
    app: str
    profile: Union[str, Dict[str, ProfileEntry], None] = None
    workloads: Dict[str, WorkloadEntry]
    controller: ControllerEntry
    simulation: SimulationEntry = Field(default_factory=SimulationEntry)
    output_dir: str = "results"
