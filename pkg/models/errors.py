"""Exception hierarchy shared by controllers, the CLI and the HTTP app."""
from typing import Any, Dict


class DepallocError(Exception):
    """Base error. Subclasses fix the process exit code used by the CLI."""

    exit_code = 2

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable diagnostics."""
        return {"error": type(self).__name__, "message": self.message, **self.details}


class ValidationError(DepallocError):
    exit_code = 1


class SimulationError(DepallocError):
    exit_code = 2


class CycleDetected(ValidationError):
    def __init__(self, cycle):
        super().__init__(f"cycle detected: {' -> '.join(cycle)}", cycle=list(cycle))


class UnknownFunction(ValidationError):
    def __init__(self, name: str):
        super().__init__(f"unknown function: {name!r}", function=name)


class MissingSla(ValidationError):
    def __init__(self, name: str):
        super().__init__(f"function {name!r} requires an SLA", function=name)


class UnreachableFunction(ValidationError):
    def __init__(self, name: str):
        super().__init__(
            f"function {name!r} is neither an entrypoint nor invoked by another function",
            function=name,
        )


class DuplicateName(ValidationError):
    def __init__(self, name: str):
        super().__init__(f"duplicate function name: {name!r}", function=name)


class InvalidAlpha(ValidationError):
    def __init__(self, alpha: float):
        super().__init__(f"alpha must be in (0, 1], got {alpha}", alpha=alpha)


class MissingProfileEntry(ValidationError):
    def __init__(self, name: str):
        super().__init__(f"no profile entry for function {name!r}", function=name)


class InfeasibleShape(ValidationError):
    pass


class GridMismatch(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class NonPositiveSetPoint(SimulationError):
    def __init__(self, name: str, value: float):
        super().__init__(f"set point for {name!r} is not positive: {value}", function=name, value=value)


class NonPositiveMeasurement(SimulationError):
    def __init__(self, measured_ms: float):
        super().__init__(f"measured response time must be positive, got {measured_ms}", measured_ms=measured_ms)


class EmptySeries(SimulationError):
    def __init__(self):
        super().__init__("cannot summarize an empty series")


class SimulationAborted(SimulationError):
    """Wraps a failure inside a run with the tick and function it happened at."""

    def __init__(self, cause: Exception, tick: int, function: str):
        super().__init__(f"run aborted at tick {tick} ({function}): {cause}", tick=tick, function=function)
        self.cause = cause
