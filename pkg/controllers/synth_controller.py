"""
Synth Controller - random application DAGs with a requested shape.

Nodes are laid out in index order so every edge points from a lower to a
higher index. The first r = n_entrypoints - n_entrypoints // 2 nodes are
roots; every other node gets exactly one parent among the k lowest-index
nodes, k being whichever of floor and ceil of (n - r) / avg_out_degree
puts the mean out-degree (n - r) / k of the non-leaf nodes closer to the
request. The remaining entrypoints are picked among the deepest non-root
nodes.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from controllers.graph_controller import GraphController
from controllers.profile_controller import ProfileController
from models.errors import InfeasibleShape
from models.graph import AppGraph, DependencyEdge, FunctionSpec
from models.perf import PerfParams
from models.workload import WorkloadKind

logger = logging.getLogger(__name__)

SLA_FACTOR = 2.0
SHAPE_TOLERANCE = 0.10


@dataclass(frozen=True)
class SyntheticApp:
    graph: AppGraph
    perf: Dict[str, PerfParams]
    nlrt_ms: Dict[str, float]

    def mean_out_degree(self) -> float:
        callers = {e.source for e in self.graph.edges}
        return len(self.graph.edges) / len(callers) if callers else 0.0


class SynthController:
    """Controller for synthetic applications."""

    @staticmethod
    def synthesize(
        n_functions: int,
        n_entrypoints: int,
        avg_out_degree: float,
        parallel_fraction: float,
        seed: int,
        max_multiplier: int = 1,
        nlrt_range_ms: Tuple[float, float] = (1.0, 8.0),
        name: str = "complex",
    ) -> SyntheticApp:
        """
        Generate a valid app whose SLAs are twice the composed nominal times.

        demand_core_ms equals nlrt, so profiling at the reference allocation
        gives back the generated nlrt values.

        Raises:
            InfeasibleShape: the requested statistics cannot be met
        """
        _check_arguments(n_functions, n_entrypoints, avg_out_degree, parallel_fraction, max_multiplier, nlrt_range_ms)
        rng = np.random.Generator(np.random.Philox(key=seed))

        n_roots = n_entrypoints - n_entrypoints // 2
        n_edges = n_functions - n_roots
        children: Dict[int, List[int]] = {}
        if n_edges:
            n_internal = _internal_count(n_edges, avg_out_degree, n_functions)
            if n_internal is None:
                raise InfeasibleShape(
                    f"cannot reach mean out-degree {avg_out_degree} with {n_functions} functions "
                    f"and {n_entrypoints} entrypoints",
                    n_functions=n_functions, n_entrypoints=n_entrypoints, avg_out_degree=avg_out_degree,
                )
            children = {i: [] for i in range(n_internal)}
            for j in range(n_roots, n_functions):
                candidates = [i for i in range(min(j, n_internal))]
                unfilled = [i for i in candidates if not children[i]]
                parent = unfilled[0] if unfilled else candidates[int(rng.integers(len(candidates)))]
                children[parent].append(j)
            children = {i: kids for i, kids in children.items() if kids}

            measured = n_edges / len(children)
            if abs(measured - avg_out_degree) > SHAPE_TOLERANCE * avg_out_degree:
                raise InfeasibleShape(
                    f"generated mean out-degree {measured:.2f} is not within 10% of {avg_out_degree}",
                    measured=measured,
                )

        names = [f"f{i + 1:02d}" for i in range(n_functions)]
        edges = []
        for parent in sorted(children):
            group_id = 0
            kids = children[parent]
            k = 0
            while k < len(kids):
                group_id += 1
                size = 2 if k + 1 < len(kids) and rng.random() < parallel_fraction else 1
                for child in kids[k:k + size]:
                    multiplier = int(rng.integers(1, max_multiplier + 1))
                    edges.append(DependencyEdge(names[parent], names[child], group_id, multiplier))
                k += size

        low, high = nlrt_range_ms
        nlrt = {n: round(float(rng.uniform(low, high)), 3) for n in names}

        depth = _depths(n_functions, children)
        extra = sorted(range(n_roots, n_functions), key=lambda i: (-depth[i], -i))[: n_entrypoints - n_roots]
        entry = set(range(n_roots)) | set(extra)

        skeleton = GraphController.build_graph(
            [FunctionSpec(names[i], sla_ms=1.0, is_entrypoint=i in entry) for i in range(n_functions)],
            edges,
            name=name,
        )
        nominal = ProfileController.compose_nominal(skeleton, nlrt)
        functions = [
            FunctionSpec(n, sla_ms=round(SLA_FACTOR * nominal.nrt_ms[n], 3), is_entrypoint=n in skeleton.entrypoints())
            for n in names
        ]
        graph = GraphController.build_graph(functions, edges, name=name)
        perf = {n: PerfParams(demand_core_ms=nlrt[n]) for n in names}
        logger.info(
            "synthesized %s: %d functions, %d entrypoints, %d edges",
            name, n_functions, len(graph.entrypoints()), len(edges),
        )
        return SyntheticApp(graph=graph, perf=perf, nlrt_ms=nlrt)

    @staticmethod
    def bottleneck_targets(graph: AppGraph, count: int = 2) -> List[str]:
        """Entrypoints that are also invoked by other functions, most ancestors first."""
        g = nx.DiGraph()
        g.add_nodes_from(graph.names)
        g.add_edges_from((e.source, e.target) for e in graph.edges)
        internal = [f for f in graph.entrypoints() if graph.in_edges[f]]
        return sorted(internal, key=lambda f: (-len(nx.ancestors(g, f)), f))[:count]

    @staticmethod
    def experiment_document(
        app: SyntheticApp,
        app_path: str,
        profile_path: str,
        cores_max_millicores: int = 16000,
        bottlenecks: int = 2,
    ) -> Dict:
        """
        Experiment file for a synthesized app: step workloads on every
        entrypoint except the bottleneck targets, whose steps range between
        0.4x and 3x their capacity at cores_max, so they stay saturated.
        """
        targets = SynthController.bottleneck_targets(app.graph, bottlenecks)
        workloads = {}
        for seed, name in enumerate(app.graph.entrypoints()):
            if name in targets:
                capacity = cores_max_millicores / app.perf[name].demand_core_ms
                params = {"period_s": 50, "low_rps": round(0.4 * capacity), "high_rps": round(3.0 * capacity)}
                workloads[name] = {"kind": WorkloadKind.BOTTLENECK_STEP.value, "params": params, "seed": seed}
            else:
                params = {"period_s": 50, "low_rps": 20, "high_rps": 120}
                workloads[name] = {"kind": WorkloadKind.STEP.value, "params": params, "seed": seed}

        gains = {
            name: {"gain_p": round(200.0 * p.demand_core_ms, 1), "gain_i": round(800.0 * p.demand_core_ms, 1)}
            for name, p in app.perf.items()
        }
        return {
            "name": f"{app.graph.name}_bottleneck",
            "app": app_path,
            "profile": profile_path,
            "workloads": workloads,
            "controller": {
                "gain_p": 1000.0,
                "gain_i": 2000.0,
                "cores_min_millicores": 100,
                "cores_max_millicores": cores_max_millicores,
                "period_s": 1.0,
                "alpha": 0.5,
                "initial_millicores": 1000,
                "function_gains": gains,
            },
            "simulation": {"duration_s": 1200, "tick_ms": 100, "replications": 10, "master_seed": 0},
            "output_dir": f"results/{app.graph.name}",
        }


def _check_arguments(n_functions, n_entrypoints, avg_out_degree, parallel_fraction, max_multiplier, nlrt_range_ms):
    if n_functions < 1:
        raise InfeasibleShape("n_functions must be >= 1", n_functions=n_functions)
    if not 1 <= n_entrypoints <= n_functions:
        raise InfeasibleShape(
            "n_entrypoints must be between 1 and n_functions",
            n_functions=n_functions, n_entrypoints=n_entrypoints,
        )
    if avg_out_degree < 0:
        raise InfeasibleShape("avg_out_degree must be >= 0", avg_out_degree=avg_out_degree)
    if not 0 <= parallel_fraction <= 1:
        raise InfeasibleShape("parallel_fraction must be in [0, 1]", parallel_fraction=parallel_fraction)
    if max_multiplier < 1:
        raise InfeasibleShape("max_multiplier must be >= 1", max_multiplier=max_multiplier)
    low, high = nlrt_range_ms
    if not 0 < low <= high:
        raise InfeasibleShape("nlrt range must satisfy 0 < low <= high", nlrt_range_ms=list(nlrt_range_ms))


def _depths(n_functions: int, children: Dict[int, List[int]]) -> List[int]:
    depth = [0] * n_functions
    for parent in sorted(children):
        for child in children[parent]:
            depth[child] = depth[parent] + 1
    return depth


def _internal_count(n_edges: int, avg_out_degree: float, n_functions: int) -> Optional[int]:
    """Number of callers whose mean out-degree comes closest to the request."""
    if avg_out_degree <= 0:
        return None
    ideal = n_edges / avg_out_degree
    limit = min(n_edges, n_functions - 1)
    options = [k for k in {math.floor(ideal), math.ceil(ideal)} if 1 <= k <= limit]
    if not options:
        return None
    return min(options, key=lambda k: (abs(n_edges / k - avg_out_degree), k))
