"""Models package: domain types, file schemas and stored-run entities."""
from .run_record import RunRecord
from .function_summary import FunctionSummaryRecord

__all__ = ["RunRecord", "FunctionSummaryRecord"]
