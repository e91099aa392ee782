"""Shared builders and hypothesis strategies for the test suite."""
from pathlib import Path

from hypothesis import strategies as st

from controllers.graph_controller import GraphController
from models.graph import DependencyEdge, FunctionSpec

ROOT = Path(__file__).resolve().parent.parent
CONFIGS = ROOT / "configs"

FIVE_FUNCTIONS_NLRT = {"f1": 7.0, "f2": 1.0, "f3": 2.0, "f4": 2.0, "f5": 3.0}


def five_functions_graph():
    """f1 -> f2 (g1), f1 -> f3 (g2), f2 -> f4 (g1), f2 -> f5 (g2); only f1 has an SLA."""
    return GraphController.build_graph(
        [
            FunctionSpec("f1", sla_ms=90.0, is_entrypoint=True),
            FunctionSpec("f2"),
            FunctionSpec("f3"),
            FunctionSpec("f4"),
            FunctionSpec("f5", is_entrypoint=True),
        ],
        [
            DependencyEdge("f1", "f2", 1),
            DependencyEdge("f1", "f3", 2),
            DependencyEdge("f2", "f4", 1),
            DependencyEdge("f2", "f5", 2),
        ],
        name="five_functions",
    )


def chain_graph(*names, sla_ms=100.0):
    functions = [FunctionSpec(names[0], sla_ms=sla_ms, is_entrypoint=True)]
    functions += [FunctionSpec(n) for n in names[1:]]
    edges = [DependencyEdge(a, b, 1) for a, b in zip(names, names[1:])]
    return GraphController.build_graph(functions, edges, name="chain")


@st.composite
def dags(draw, max_nodes=8, tree=False, max_multiplier=1, extra_entry_slas=False):
    """
    Random valid DAG plus a local time per node.

    Nodes are indexed so that every edge points to a higher index. Nodes
    without callers are entrypoints with an SLA. With tree=True every other
    node has exactly one caller and carries no SLA.
    """
    n = draw(st.integers(1, max_nodes))
    names = [f"n{i}" for i in range(n)]
    edges = []
    for j in range(1, n):
        if tree:
            parents = [draw(st.integers(0, j - 1))]
        else:
            parents = draw(st.lists(st.integers(0, j - 1), max_size=min(3, j), unique=True))
        for i in parents:
            edges.append(DependencyEdge(
                names[i],
                names[j],
                group_id=draw(st.integers(1, 3)),
                multiplier=draw(st.integers(1, max_multiplier)),
            ))

    called = {e.target for e in edges}
    functions = []
    for name in names:
        if name not in called:
            functions.append(FunctionSpec(name, sla_ms=draw(st.floats(10.0, 1000.0)), is_entrypoint=True))
        elif extra_entry_slas and draw(st.booleans()):
            functions.append(FunctionSpec(name, sla_ms=draw(st.floats(10.0, 1000.0)), is_entrypoint=True))
        else:
            functions.append(FunctionSpec(name))
    graph = GraphController.build_graph(functions, edges, name="random")
    local = {name: draw(st.floats(0.1, 50.0)) for name in names}
    return graph, local


def short_run(replication=0, mode=None, duration_s=5):
    """A few seconds of a two-function chain under constant load."""
    from controllers.profile_controller import ProfileController
    from controllers.simulation_controller import SimulationController
    from models.controller import ControllerConfig
    from models.perf import PerfParams
    from models.simulation import SimulationConfig, SimulationMode
    from models.workload import WorkloadKind, WorkloadSpec

    mode = mode or SimulationMode.DEPENDENCY_AWARE
    graph = chain_graph("a", "b")
    perf = {"a": PerfParams(4.0), "b": PerfParams(5.0)}
    profile = ProfileController.compose_nominal(graph, {"a": 4.0, "b": 5.0})
    targets = SimulationController.targets_for(graph, profile, mode, 0.5)
    sim = SimulationConfig(duration_s=duration_s, replications=1, mode=mode)
    workloads = {"a": WorkloadSpec(WorkloadKind.CONSTANT, {"rps": 30})}
    config = ControllerConfig(gain_p=800, gain_i=3200, initial_millicores=1000)
    return SimulationController.run(graph, perf, targets, workloads, sim, config, replication, experiment="chain_test")
