"""Views package for response and report formatting."""
from .report_view import ReportView
from .run_view import RunView
from .setpoint_view import SetpointView

__all__ = ["ReportView", "RunView", "SetpointView"]
