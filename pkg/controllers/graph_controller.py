"""
Graph Controller - builds, validates and queries annotated dependency DAGs.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

import networkx as nx
from pydantic import ValidationError as SchemaError

from models.errors import (
    ConfigError,
    CycleDetected,
    DuplicateName,
    MissingSla,
    UnknownFunction,
    UnreachableFunction,
)
from models.graph import AppGraph, DependencyEdge, FunctionSpec
from models.perf import DEFAULT_UTILIZATION_CAP, PerfParams
from models.schemas import AppFile

logger = logging.getLogger(__name__)

InvocationGroup = List[Tuple[str, int]]


class GraphController:
    """Controller for application DAGs."""

    @staticmethod
    def build_graph(
        functions: Iterable[FunctionSpec],
        edges: Iterable[DependencyEdge],
        name: str = "app",
    ) -> AppGraph:
        """
        Validate functions and edges and build an immutable AppGraph.

        Raises:
            DuplicateName, UnknownFunction, CycleDetected, MissingSla,
            UnreachableFunction, ConfigError
        """
        functions = tuple(functions)
        edges = tuple(edges)

        names = set()
        for spec in functions:
            if spec.name in names:
                raise DuplicateName(spec.name)
            names.add(spec.name)
            if spec.sla_ms is not None and not spec.sla_ms > 0:
                raise ConfigError(f"SLA of {spec.name!r} must be positive", function=spec.name)

        seen_edges = set()
        for edge in edges:
            for endpoint in (edge.source, edge.target):
                if endpoint not in names:
                    raise UnknownFunction(endpoint)
            if edge.source == edge.target:
                raise CycleDetected([edge.source, edge.source])
            if edge.multiplier < 1:
                raise ConfigError(
                    f"multiplier of {edge.source}->{edge.target} must be >= 1",
                    source=edge.source, target=edge.target,
                )
            key = (edge.source, edge.target, edge.group_id)
            if key in seen_edges:
                raise ConfigError(
                    f"duplicate edge {edge.source}->{edge.target} in group {edge.group_id}",
                    source=edge.source, target=edge.target,
                )
            seen_edges.add(key)

        g = nx.MultiDiGraph()
        g.add_nodes_from(sorted(names))
        g.add_edges_from((e.source, e.target) for e in edges)
        try:
            cycle = nx.find_cycle(g)
        except nx.NetworkXNoCycle:
            cycle = None
        if cycle:
            raise CycleDetected([u for u, *_ in cycle] + [cycle[0][0]])

        has_callers = {e.target for e in edges}
        for spec in functions:
            if spec.name in has_callers:
                continue
            if not spec.is_entrypoint:
                raise UnreachableFunction(spec.name)
            if spec.sla_ms is None:
                raise MissingSla(spec.name)

        order = tuple(nx.lexicographical_topological_sort(g))
        return AppGraph(functions=functions, edges=edges, name=name, order=order)

    @staticmethod
    def topological_order(graph: AppGraph) -> List[str]:
        """Sources before targets, ties broken lexicographically."""
        return list(graph.order)

    @staticmethod
    def invocation_groups(graph: AppGraph, f: str) -> List[InvocationGroup]:
        """
        Out-edges of f partitioned by group_id, ascending.

        Returns:
            List of groups, each a list of (child name, multiplier)
        """
        if f not in graph.by_name:
            raise UnknownFunction(f)
        groups: Dict[int, InvocationGroup] = {}
        for edge in graph.out_edges[f]:
            groups.setdefault(edge.group_id, []).append((edge.target, edge.multiplier))
        return [sorted(groups[gid]) for gid in sorted(groups)]

    @staticmethod
    def incoming_edges(graph: AppGraph, f: str) -> List[DependencyEdge]:
        """All edges targeting f, ordered by (source, group_id)."""
        if f not in graph.by_name:
            raise UnknownFunction(f)
        return sorted(graph.in_edges[f], key=lambda e: (e.source, e.group_id))

    @staticmethod
    def compose(graph: AppGraph, local: Dict[str, float]) -> Dict[str, float]:
        """
        Total times from local times, evaluated in reverse topological order:
        local + sum of m*total over sequential invocations + max of m*total
        within each parallel group.
        """
        total: Dict[str, float] = {}
        for name in reversed(graph.order):
            value = local[name]
            for group in GraphController.invocation_groups(graph, name):
                value += max(m * total[child] for child, m in group)
            total[name] = value
        return total

    @staticmethod
    def from_document(document: Dict[str, Any]) -> Tuple[AppGraph, Dict[str, PerfParams]]:
        """
        Build a graph (and the perf params embedded in it) from a parsed
        application document.
        """
        try:
            app_file = AppFile.model_validate(document)
        except SchemaError as e:
            raise ConfigError("invalid application file", problems=_schema_problems(e))

        functions = [
            FunctionSpec(name=f.name, sla_ms=f.sla_ms, is_entrypoint=f.entrypoint)
            for f in app_file.functions
        ]
        edges = [
            DependencyEdge(source=e.source, target=e.target, group_id=e.group_id, multiplier=e.multiplier)
            for e in app_file.edges
        ]
        graph = GraphController.build_graph(functions, edges, name=app_file.name)

        perf = {}
        for f in app_file.functions:
            if f.demand_core_ms is None:
                continue
            try:
                perf[f.name] = PerfParams(f.demand_core_ms, f.utilization_cap)
            except ValueError as e:
                raise ConfigError(str(e), function=f.name)
        return graph, perf

    @staticmethod
    def load(path) -> Tuple[AppGraph, Dict[str, PerfParams]]:
        """Load and validate an application file."""
        path = Path(path)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read application file {str(path)!r}: {e}")
        graph, perf = GraphController.from_document(document)
        logger.debug("loaded app %s: %d functions, %d edges", graph.name, len(graph.functions), len(graph.edges))
        return graph, perf

    @staticmethod
    def to_document(
        graph: AppGraph,
        perf: Optional[Dict[str, PerfParams]] = None,
        reconstructed: bool = False,
        description: Optional[str] = None,
    ) -> Dict[str, Any]:
        """Canonical serialization, inverse of from_document."""
        perf = perf or {}
        document: Dict[str, Any] = {"name": graph.name}
        if description:
            document["description"] = description
        if reconstructed:
            document["reconstructed"] = True

        functions = []
        for spec in graph.functions:
            entry: Dict[str, Any] = {"name": spec.name}
            if spec.sla_ms is not None:
                entry["sla_ms"] = spec.sla_ms
            entry["entrypoint"] = spec.is_entrypoint
            if spec.name in perf:
                entry["demand_core_ms"] = perf[spec.name].demand_core_ms
                if perf[spec.name].utilization_cap != DEFAULT_UTILIZATION_CAP:
                    entry["utilization_cap"] = perf[spec.name].utilization_cap
            functions.append(entry)
        document["functions"] = functions
        document["edges"] = [
            {"from": e.source, "to": e.target, "group_id": e.group_id, "multiplier": e.multiplier}
            for e in graph.edges
        ]
        return document


def _schema_problems(error: SchemaError) -> List[str]:
    return [f"{'.'.join(str(p) for p in item['loc'])}: {item['msg']}" for item in error.errors()]
