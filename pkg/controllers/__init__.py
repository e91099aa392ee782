"""Controllers package: graph validation, set points, simulation and stored runs."""
from .graph_controller import GraphController
from .profile_controller import ProfileController
from .setpoint_controller import SetpointController
from .perf_controller import PerfController
from .workload_controller import WorkloadController
from .pi_controller import PIController
from .metrics_controller import MetricsController
from .simulation_controller import SimulationController
from .synth_controller import SynthController
from .experiment_controller import ExperimentBundle, ExperimentController
from .results_controller import ResultsController

__all__ = [
    "GraphController",
    "ProfileController",
    "SetpointController",
    "PerfController",
    "WorkloadController",
    "PIController",
    "MetricsController",
    "SimulationController",
    "SynthController",
    "ExperimentBundle",
    "ExperimentController",
    "ResultsController",
]
