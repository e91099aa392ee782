"""Annotated dependency DAG: functions, invocation edges and the graph itself."""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple


@dataclass(frozen=True)
class FunctionSpec:
    """
    A serverless function of an application.

    sla_ms is an upper bound on the total response time. Entrypoints can
    receive user requests directly.
    """
    name: str
    sla_ms: Optional[float] = None
    is_entrypoint: bool = False


@dataclass(frozen=True)
class DependencyEdge:
    """
    An invocation of target from within source.

    Edges of the same source sharing group_id are issued in parallel; a
    group with a single edge is a sequential invocation. multiplier is the
    number of invocations per call of source.
    """
    source: str
    target: str
    group_id: int = 1
    multiplier: int = 1


@dataclass(frozen=True)
class AppGraph:
    """
    Validated, immutable application DAG.

    Only controllers.graph_controller.build_graph should construct it; the
    structural queries live there too.
    """
    functions: Tuple[FunctionSpec, ...]
    edges: Tuple[DependencyEdge, ...]
    name: str = "app"
    order: Tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def by_name(self) -> Dict[str, FunctionSpec]:
        return {f.name: f for f in self.functions}

    @cached_property
    def out_edges(self) -> Dict[str, List[DependencyEdge]]:
        result: Dict[str, List[DependencyEdge]] = {f.name: [] for f in self.functions}
        for edge in self.edges:
            result[edge.source].append(edge)
        return result

    @cached_property
    def in_edges(self) -> Dict[str, List[DependencyEdge]]:
        result: Dict[str, List[DependencyEdge]] = {f.name: [] for f in self.functions}
        for edge in self.edges:
            result[edge.target].append(edge)
        return result

    @property
    def names(self) -> List[str]:
        return [f.name for f in self.functions]

    def is_leaf(self, name: str) -> bool:
        return not self.out_edges[name]

    def slas(self) -> Dict[str, float]:
        """Every configured SLA, entrypoint or not."""
        return {f.name: f.sla_ms for f in self.functions if f.sla_ms is not None}

    def entry_slas(self) -> Dict[str, float]:
        """SLAs of entrypoints, the only ones that drive set-point propagation."""
        return {f.name: f.sla_ms for f in self.functions if f.is_entrypoint and f.sla_ms is not None}

    def entrypoints(self) -> List[str]:
        return [f.name for f in self.functions if f.is_entrypoint]
