"""Set points produced by decomposing SLAs over the DAG."""
from dataclasses import dataclass
from enum import Enum
from typing import Dict


class SetPointSource(str, Enum):
    USER_SLA = "user-SLA"
    PROPAGATED = "propagated"
    PARALLEL_MAX_RAISED = "parallel-max-raised"
    MULTI_PARENT_MIN = "multi-parent-min"


@dataclass(frozen=True)
class SetPointEntry:
    sp_ms: float
    lsp_ms: float
    source: SetPointSource


@dataclass(frozen=True)
class SetPointTable:
    """Per-function total (sp) and local (lsp) set points."""
    entries: Dict[str, SetPointEntry]
    alpha: float

    def sp(self, name: str) -> float:
        return self.entries[name].sp_ms

    def lsp(self, name: str) -> float:
        return self.entries[name].lsp_ms

    def __contains__(self, name: str) -> bool:
        return name in self.entries
