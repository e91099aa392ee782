"""
PI Controller - per-function core allocation.

Each step computes err = 1/set_point - 1/measured (1/ms), so a function
slower than its set point yields a positive error and more cores:
    P = gain_p * err
    I = I + gain_i * err
    cores = min(cores_max, max(cores_min, P + I))
While the clamp binds the integral keeps its previous value.
"""
import math
from typing import Dict, Mapping, Tuple, Union

from controllers.setpoint_controller import SetpointController
from models.controller import ControlMode, ControllerConfig, ControllerState
from models.errors import ConfigError, MissingSla, NonPositiveMeasurement
from models.graph import AppGraph
from models.setpoints import SetPointTable


class PIController:
    """Controller for PI core allocation."""

    @staticmethod
    def pi_step(state: ControllerState, config: ControllerConfig, measured_ms: float) -> Tuple[ControllerState, int]:
        """
        One control period.

        Returns:
            (new state, allocation in millicores)

        Raises:
            NonPositiveMeasurement: measured_ms <= 0
        """
        if not measured_ms > 0:
            raise NonPositiveMeasurement(measured_ms)
        err = 1.0 / state.set_point_ms - 1.0 / measured_ms
        proportional = config.gain_p * err
        integral = state.integral_accumulator + config.gain_i * err
        raw = proportional + integral

        if raw > config.cores_max_millicores or raw < config.cores_min_millicores:
            integral = state.integral_accumulator
        output = _clamp(_round_half_up(raw), config)
        return ControllerState(integral, state.set_point_ms, output), output

    @staticmethod
    def idle(state: ControllerState, config: ControllerConfig) -> Tuple[ControllerState, int]:
        """A period without requests gives no sample; release to cores_min."""
        floor = config.cores_min_millicores
        return ControllerState(float(floor), state.set_point_ms, floor), floor

    @staticmethod
    def make_controllers(
        graph: AppGraph,
        targets: Union[SetPointTable, Mapping[str, float]],
        config: ControllerConfig,
    ) -> Dict[str, ControllerState]:
        """
        One independent controller per function.

        Args:
            targets: SetPointTable in local mode, SLA per function in total mode

        Raises:
            MissingSla: total mode and a function has no SLA
        """
        initial = config.initial_millicores or config.cores_min_millicores
        initial = _clamp(initial, config)
        states = {}
        for name in graph.names:
            if config.mode == ControlMode.LOCAL:
                if not isinstance(targets, SetPointTable):
                    raise ConfigError("local mode requires a set-point table")
                set_point = targets.lsp(name)
            else:
                if isinstance(targets, SetPointTable) or name not in targets:
                    raise MissingSla(name)
                set_point = SetpointController.entry_set_point(targets[name], config.alpha)
            states[name] = ControllerState(float(initial), set_point, initial)
        return states


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def _clamp(value: int, config: ControllerConfig) -> int:
    return min(config.cores_max_millicores, max(config.cores_min_millicores, value))
