"""
Setpoint Controller - decomposes user SLAs into per-function set points.

Each SLA-bearing entrypoint gets sp = alpha * SLA. Walking the DAG top-down,
a parent i hands each child j the candidate (sp_i / m_ij) * (nrt_j / nrt_i);
members of a parallel group are then raised so that they all finish with the
slowest member; a function with several candidates keeps the minimum. The
local set point is lsp_i = sp_i * nlrt_i / nrt_i.
"""
import logging
from typing import Dict, List, Mapping, Optional, Tuple

from controllers.graph_controller import GraphController
from models.errors import ConfigError, InvalidAlpha, MissingProfileEntry, MissingSla, NonPositiveSetPoint
from models.graph import AppGraph
from models.profile import NominalProfile
from models.setpoints import SetPointEntry, SetPointSource, SetPointTable

logger = logging.getLogger(__name__)

Candidate = Tuple[float, SetPointSource]


class SetpointController:
    """Controller for set-point computation."""

    @staticmethod
    def entry_set_point(sla_ms: float, alpha: float) -> float:
        """sp = alpha * SLA, with 0 < alpha <= 1."""
        if not 0 < alpha <= 1:
            raise InvalidAlpha(alpha)
        if not sla_ms > 0:
            raise ConfigError(f"SLA must be positive, got {sla_ms}")
        return alpha * sla_ms

    @staticmethod
    def propagate(
        graph: AppGraph,
        profile: NominalProfile,
        slas: Optional[Mapping[str, float]] = None,
        alpha: float = 0.5,
    ) -> SetPointTable:
        """
        Compute sp and lsp for every function.

        Args:
            graph: Validated application graph
            profile: Nominal profile covering every function
            slas: SLAs of entrypoints; defaults to the graph's entrypoint SLAs
            alpha: Set-point scaling factor

        Raises:
            MissingSla, MissingProfileEntry, InvalidAlpha, NonPositiveSetPoint
        """
        if slas is None:
            slas = graph.entry_slas()
        for name in graph.names:
            if name not in profile.nlrt_ms or name not in profile.nrt_ms:
                raise MissingProfileEntry(name)

        candidates: Dict[str, List[Candidate]] = {name: [] for name in graph.names}
        for name, sla in slas.items():
            if name not in candidates:
                continue
            candidates[name].append((SetpointController.entry_set_point(sla, alpha), SetPointSource.USER_SLA))

        entries: Dict[str, SetPointEntry] = {}
        for name in graph.order:
            own = candidates[name]
            if not own:
                raise MissingSla(name)
            sp, source = min(own, key=lambda c: c[0])
            if len(own) > 1:
                source = SetPointSource.MULTI_PARENT_MIN
            if not sp > 0:
                raise NonPositiveSetPoint(name, sp)

            nrt = profile.nrt_ms[name]
            entries[name] = SetPointEntry(sp_ms=sp, lsp_ms=sp * profile.nlrt_ms[name] / nrt, source=source)

            for group in GraphController.invocation_groups(graph, name):
                proposed = [(child, m, (sp / m) * (profile.nrt_ms[child] / nrt)) for child, m in group]
                if len(group) == 1:
                    child, _, value = proposed[0]
                    candidates[child].append((value, SetPointSource.PROPAGATED))
                    continue
                for (child, _, value), (_, _, raised) in zip(proposed, SetpointController.raise_parallel(proposed)):
                    kind = SetPointSource.PARALLEL_MAX_RAISED if raised > value else SetPointSource.PROPAGATED
                    candidates[child].append((raised, kind))

        logger.debug("set points for %s: %s", graph.name, {n: round(e.sp_ms, 3) for n, e in entries.items()})
        return SetPointTable(entries=entries, alpha=alpha)

    @staticmethod
    def raise_parallel(members: List[Tuple[str, int, float]]) -> List[Tuple[str, int, float]]:
        """
        Raise the members of a parallel group so they all finish with the
        slowest one.

        Members are raised to the group max of m * sp divided by their own
        m, not to the plain max sp, so the composed target stays within sp.

        Args:
            members: (child, multiplier, candidate sp) per member
        """
        finish = max(m * value for _, m, value in members)
        return [(child, m, value if m * value == finish else finish / m) for child, m, value in members]

    @staticmethod
    def composed_target(graph: AppGraph, table: SetPointTable, f: str) -> float:
        """
        Total response time of f if every function in its subgraph met its
        local set point exactly.
        """
        memo: Dict[str, float] = {}

        def visit(name: str) -> float:
            if name in memo:
                return memo[name]
            value = table.lsp(name)
            for group in GraphController.invocation_groups(graph, name):
                value += max(m * visit(child) for child, m in group)
            memo[name] = value
            return value

        return visit(f)
