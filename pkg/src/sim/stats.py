# src/sim/stats.py
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Dict, NamedTuple, Optional

from src.common.numbers import safe_div


@dataclass
class SimStats:
    """Counters of one run. Data counters only include measured (post warm-up) packets."""
    data_sent: int = 0
    data_delivered: int = 0
    latency_sum: float = 0.0
    bytes_delivered: int = 0
    hop_sum: int = 0

    hello_tx: int = 0
    tc_tx: int = 0
    md_probe_tx: int = 0
    hello_rx: int = 0
    tc_rx: int = 0
    tc_default_rx: int = 0
    md_probe_rx: int = 0

    tc_originated: int = 0
    tc_triggered: int = 0
    tc_forwarded: int = 0
    mpr_changes: int = 0
    route_computations: int = 0

    drops_no_route: int = 0
    drops_ttl: int = 0
    drops_queue: int = 0
    drops_channel: int = 0
    control_queue_drops: int = 0
    in_flight: int = 0

    @property
    def routing_packets_transmitted(self) -> int:
        return self.hello_tx + self.tc_tx + self.md_probe_tx

    @property
    def drops_total(self) -> int:
        return self.drops_no_route + self.drops_ttl + self.drops_queue + self.drops_channel

    def conserved(self) -> bool:
        return self.data_sent == self.data_delivered + self.in_flight + self.drops_total

    def as_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["routing_packets_transmitted"] = self.routing_packets_transmitted
        out["drops_total"] = self.drops_total
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SimStats":
        names = cls.__dataclass_fields__.keys()
        return cls(**{k: v for k, v in data.items() if k in names})


class RunMetrics(NamedTuple):
    """Performance figures of a run; e2ed and nrl are None when nothing was delivered."""
    throughput: float
    e2ed: Optional[float]
    nrl: Optional[float]


def finalize_stats(stats: SimStats, duration: float) -> RunMetrics:
    if duration <= 0:
        raise ValueError(f"duration must be positive, got {duration!r}")
    throughput = stats.data_delivered / duration
    e2ed = safe_div(stats.latency_sum, stats.data_delivered)
    nrl = safe_div(stats.routing_packets_transmitted, stats.data_delivered)
    return RunMetrics(throughput, e2ed, nrl)


def delivery_ratio(stats: SimStats) -> Optional[float]:
    return safe_div(stats.data_delivered, stats.data_sent)


def drop_ratio(stats: SimStats) -> Optional[float]:
    return safe_div(stats.drops_total, stats.data_sent)


def mean_hops(stats: SimStats) -> Optional[float]:
    return safe_div(stats.hop_sum, stats.data_delivered)
