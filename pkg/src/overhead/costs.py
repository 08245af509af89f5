# src/overhead/costs.py
"""
Analytical message-cost model of OLSR control traffic.

Costs are counted in message receptions at one unit each:

    hello        (tau_nl / tau_hello) * sum_i |Nbr(i)|
    tc trigger   sum over MPR-set changes of |new MPR set|
    tc default   (tau_nl / tc_interval) * sum_i |Nbr(i)|   (periodic reading, default)
                 or only the rounds in which node i's MPR set changed (change-gated reading)

Integrals over the network lifetime are evaluated as sums over the event timeline.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.config.config import (
    CONTROL_ENTRY_BYTES,
    CONTROL_HEADER_BYTES,
    LINK_RATE_BPS,
    PROBE_BYTES,
)
from src.metrics.types import MetricKind
from src.topology.types import NodeId, Topology

logger = logging.getLogger(__name__)


class DefaultTcReading(str, Enum):
    PERIODIC = "periodic"
    CHANGE_GATED = "change_gated"


@dataclass(frozen=True)
class MprSnapshot:
    time: float
    node: NodeId
    mprs: FrozenSet[NodeId]
    changed: int


@dataclass
class MprChangeLog:
    """
    Per-node MPR-set time series. `changed` is 1 exactly when a snapshot differs from the
    node's previous one; every node implicitly starts from the empty set.
    """
    entries: List[MprSnapshot] = field(default_factory=list)
    _last: Dict[NodeId, FrozenSet[NodeId]] = field(default_factory=dict, repr=False)

    def record(self, time: float, node: NodeId, mprs: Iterable[NodeId]) -> MprSnapshot:
        current = frozenset(mprs)
        changed = int(current != self._last.get(node, frozenset()))
        snap = MprSnapshot(time, node, current, changed)
        self._last[node] = current
        self.entries.append(snap)
        return snap

    def changes(self, start: float = 0.0, end: float = math.inf) -> List[MprSnapshot]:
        return [e for e in self.entries if e.changed and start <= e.time <= end]

    def changed_in(self, node: NodeId, start: float, end: float) -> bool:
        """Whether `node` changed its MPR set in the half-open interval (start, end]."""
        return any(e.changed and e.node == node and start < e.time <= end for e in self.entries)

    def last_change_time(self) -> Optional[float]:
        times = [e.time for e in self.entries if e.changed]
        return max(times) if times else None

    def to_records(self) -> List[Dict[str, Any]]:
        return [
            {"time": e.time, "node": e.node, "mprs": sorted(e.mprs), "changed": e.changed}
            for e in self.entries
        ]

    @classmethod
    def from_records(cls, records: Iterable[Dict[str, Any]]) -> "MprChangeLog":
        log = cls()
        for rec in sorted(records, key=lambda r: (float(r["time"]), int(r["node"]))):
            snap = log.record(float(rec["time"]), int(rec["node"]), rec.get("mprs", ()))
            if "changed" in rec and int(rec["changed"]) != snap.changed:
                raise ValueError(
                    f"inconsistent change indicator for node {rec['node']} at t={rec['time']}"
                )
        return log


class OverheadCosts(BaseModel):
    model_config = ConfigDict(frozen=True)

    hello_cost: float = Field(ge=0)
    tc_trigger_cost: float = Field(ge=0)
    tc_default_cost: float = Field(ge=0)
    default_reading: DefaultTcReading = DefaultTcReading.PERIODIC

    @property
    def total(self) -> float:
        return total_cost(self)


def _neighbor_sum(topology: Topology) -> int:
    return sum(topology.degree(u) for u in topology.node_ids())


def _check_interval(name: str, value: float) -> None:
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")


def _check_lifetime(tau_nl: float) -> None:
    if tau_nl < 0:
        raise ValueError(f"network lifetime must be non-negative, got {tau_nl!r}")


def hello_cost(topology: Topology, tau_nl: float, tau_hello: float) -> float:
    _check_interval("tau_hello", tau_hello)
    _check_lifetime(tau_nl)
    return (tau_nl / tau_hello) * _neighbor_sum(topology)


def tc_trigger_cost(
    log: MprChangeLog,
    topology: Optional[Topology] = None,
    start: float = 0.0,
    end: float = math.inf,
) -> float:
    """Each MPR-set change at a node costs the size of its new MPR set."""
    return float(sum(len(e.mprs) for e in log.changes(start, end)))


def tc_default_cost(
    topology: Topology,
    tau_nl: float,
    tc_interval: float,
    change_gated: bool = False,
    log: Optional[MprChangeLog] = None,
    start: float = 0.0,
) -> float:
    """
    Periodic reading: every node floods a TC every interval regardless of MPR changes.
    Change-gated reading: node i's neighbor count is only charged for rounds in which
    its MPR set changed; it needs the change log.
    """
    _check_interval("tc_interval", tc_interval)
    _check_lifetime(tau_nl)
    if not change_gated:
        return (tau_nl / tc_interval) * _neighbor_sum(topology)
    if log is None:
        raise ValueError("the change-gated default TC cost needs an MPR change log")
    rounds = int(math.floor(tau_nl / tc_interval + 1e-9))
    cost = 0
    for u in topology.node_ids():
        deg = topology.degree(u)
        if deg == 0:
            continue
        for r in range(1, rounds + 1):
            if log.changed_in(u, start + (r - 1) * tc_interval, start + r * tc_interval):
                cost += deg
    return float(cost)


def total_cost(parts: OverheadCosts) -> float:
    return parts.hello_cost + parts.tc_trigger_cost + parts.tc_default_cost


def overhead_costs(
    topology: Topology,
    tau_nl: float,
    hello_interval: float,
    tc_interval: float,
    log: MprChangeLog,
    change_gated: bool = False,
    start: float = 0.0,
) -> OverheadCosts:
    """All three terms over [start, start + tau_nl]."""
    reading = DefaultTcReading.CHANGE_GATED if change_gated else DefaultTcReading.PERIODIC
    return OverheadCosts(
        hello_cost=hello_cost(topology, tau_nl, hello_interval),
        tc_trigger_cost=tc_trigger_cost(log, topology, start, start + tau_nl),
        tc_default_cost=tc_default_cost(topology, tau_nl, tc_interval, change_gated, log, start),
        default_reading=reading,
    )


def metric_cost(kind: "MetricKind | str", topology: Topology, tau_nl: float, tau_hello: float) -> float:
    """
    Extra messages a metric needs. ETX, InvETX and ML ride on HELLOs (0); MD sends one
    probe per neighbor per HELLO interval.
    """
    kind = MetricKind.parse(kind)
    _check_interval("tau_hello", tau_hello)
    _check_lifetime(tau_nl)
    if kind is not MetricKind.MD:
        return 0.0
    return (tau_nl / tau_hello) * _neighbor_sum(topology)


class LatencyCosts(BaseModel):
    """Airtime in seconds spent on periodic, triggered and metric-probing control traffic."""
    model_config = ConfigDict(frozen=True)

    periodic: float = Field(ge=0)
    triggered: float = Field(ge=0)
    metric: float = Field(ge=0)

    @property
    def total(self) -> float:
        return self.periodic + self.triggered + self.metric


def _control_airtime(entries: int, rate_bps: float) -> float:
    return (CONTROL_HEADER_BYTES + CONTROL_ENTRY_BYTES * entries) * 8.0 / rate_bps


def latency_costs(
    topology: Topology,
    tau_nl: float,
    hello_interval: float,
    tc_interval: float,
    kind: "MetricKind | str",
    log: Optional[MprChangeLog] = None,
    rate_bps: float = LINK_RATE_BPS,
    start: float = 0.0,
) -> LatencyCosts:
    """
    Each HELLO and default TC of node i lists its |Nbr(i)| neighbors (upper bound for TCs);
    a triggered TC is charged at the originator's neighbor count; MD probes are fixed size.
    """
    kind = MetricKind.parse(kind)
    _check_interval("hello_interval", hello_interval)
    _check_interval("tc_interval", tc_interval)
    _check_interval("rate_bps", rate_bps)
    _check_lifetime(tau_nl)

    periodic = 0.0
    for u in topology.node_ids():
        air = _control_airtime(topology.degree(u), rate_bps)
        periodic += (tau_nl / hello_interval) * air + (tau_nl / tc_interval) * air

    triggered = 0.0
    if log is not None:
        for e in log.changes(start, start + tau_nl):
            deg = topology.degree(e.node) if e.node < topology.n else 0
            triggered += _control_airtime(deg, rate_bps)

    metric = 0.0
    if kind is MetricKind.MD:
        probes = metric_cost(kind, topology, tau_nl, hello_interval)
        metric = probes * PROBE_BYTES * 8.0 / rate_bps

    return LatencyCosts(periodic=periodic, triggered=triggered, metric=metric)

