# src/overhead/efficiency.py
from __future__ import annotations

import heapq
import logging
from enum import Enum
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, InstanceOf, model_validator

from src.common.numbers import rel_close
from src.config.config import BUDGET_REL_TOL
from src.overhead.costs import LatencyCosts, OverheadCosts
from src.topology.types import NodeId, Topology

logger = logging.getLogger(__name__)


class BudgetStatus(str, Enum):
    FEASIBLE = "feasible"
    CRITICAL = "critical"
    INFEASIBLE = "infeasible"


class MeasuredOverhead(BaseModel):
    """Energy (message units) and latency (seconds) terms checked against the budgets."""
    model_config = ConfigDict(frozen=True)

    energy_periodic: float = Field(default=0.0, ge=0)
    energy_triggered: float = Field(default=0.0, ge=0)
    energy_metric: float = Field(default=0.0, ge=0)
    latency_periodic: float = Field(default=0.0, ge=0)
    latency_triggered: float = Field(default=0.0, ge=0)
    latency_metric: float = Field(default=0.0, ge=0)

    @property
    def energy(self) -> float:
        return self.energy_periodic + self.energy_triggered + self.energy_metric

    @property
    def latency(self) -> float:
        return self.latency_periodic + self.latency_triggered + self.latency_metric

    @classmethod
    def from_costs(cls, costs: OverheadCosts, metric: float, latency: LatencyCosts) -> "MeasuredOverhead":
        return cls(
            energy_periodic=costs.hello_cost + costs.tc_default_cost,
            energy_triggered=costs.tc_trigger_cost,
            energy_metric=metric,
            latency_periodic=latency.periodic,
            latency_triggered=latency.triggered,
            latency_metric=latency.metric,
        )


def check_budget(measured: MeasuredOverhead, beta_cri: float, tau_cri: float) -> BudgetStatus:
    """
    INFEASIBLE when either sum exceeds its budget, CRITICAL when either sits on it
    (relative tolerance), FEASIBLE when both are strictly below.
    """
    if beta_cri <= 0 or tau_cri <= 0:
        raise ValueError(f"budgets must be positive (energy={beta_cri!r}, latency={tau_cri!r})")
    pairs = ((measured.energy, beta_cri), (measured.latency, tau_cri))
    on_budget = [rel_close(v, b, BUDGET_REL_TOL) for v, b in pairs]
    if any(v > b and not close for (v, b), close in zip(pairs, on_budget)):
        return BudgetStatus.INFEASIBLE
    if any(on_budget):
        return BudgetStatus.CRITICAL
    return BudgetStatus.FEASIBLE


class EfficiencyProblem(BaseModel):
    model_config = ConfigDict(frozen=True)

    topology: InstanceOf[Topology]
    source: NodeId
    sink: NodeId
    energy_budget: float = Field(gt=0)
    latency_budget: float = Field(gt=0)
    measured: MeasuredOverhead = Field(default_factory=MeasuredOverhead)

    @model_validator(mode="after")
    def _check(self) -> "EfficiencyProblem":
        if self.source == self.sink:
            raise ValueError(f"source and sink must differ (both {self.source})")
        return self


def widest_path(topology: Topology, s: NodeId, t: NodeId) -> Tuple[float, List[NodeId]]:
    """
    Max-min capacity path from s to t by a best-first search on bottleneck width.
    Returns (0.0, []) when t is unreachable.
    """
    best: Dict[NodeId, float] = {s: float("inf")}
    prev: Dict[NodeId, NodeId] = {}
    heap: List[Tuple[float, NodeId]] = [(-float("inf"), s)]
    done = set()
    while heap:
        neg_width, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == t:
            break
        width = -neg_width
        for v in topology.neighbors(u):
            cap = topology.capacity(u, v)
            if cap <= 0 or v in done:
                continue
            cand = min(width, cap)
            if cand > best.get(v, 0.0):
                best[v] = cand
                prev[v] = u
                heapq.heappush(heap, (-cand, v))
    if t not in done:
        return 0.0, []
    path = [t]
    while path[-1] != s:
        path.append(prev[path[-1]])
    path.reverse()
    return best[t], path


def max_efficiency(problem: EfficiencyProblem) -> float:
    """
    Flow value e of the single-path efficiency problem: the bottleneck capacity of the
    widest s-t path, or 0 when the overhead budgets are not strictly met or t is unreachable.
    """
    topo = problem.topology
    for name, node in (("source", problem.source), ("sink", problem.sink)):
        if not 0 <= node < topo.n:
            raise ValueError(f"{name} {node} is not a node of the topology (n={topo.n})")

    status = check_budget(problem.measured, problem.energy_budget, problem.latency_budget)
    if status is not BudgetStatus.FEASIBLE:
        logger.info("budget check %s for %d->%d; e = 0", status.value, problem.source, problem.sink)
        return 0.0

    width, _ = widest_path(topo, problem.source, problem.sink)
    return width
