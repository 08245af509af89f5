# src/sim/traffic.py
from __future__ import annotations

import random
from typing import Iterator, List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.topology.types import NodeId


class CbrFlow(BaseModel):
    """Constant-rate stream of fixed-size data packets from src to dst over [start, stop)."""
    model_config = ConfigDict(frozen=True)

    src: NodeId = Field(ge=0)
    dst: NodeId = Field(ge=0)
    rate: float = Field(gt=0)
    start: float = Field(default=0.0, ge=0)
    stop: float = Field(default=float("inf"))

    @model_validator(mode="after")
    def _check(self) -> "CbrFlow":
        if self.src == self.dst:
            raise ValueError(f"flow source and destination must differ (both {self.src})")
        if self.stop < self.start:
            raise ValueError(f"flow stop {self.stop} precedes start {self.start}")
        return self

    def emission_times(self, horizon: float) -> Iterator[float]:
        """start + k/rate for k >= 0, strictly before min(stop, horizon)."""
        end = min(self.stop, horizon)
        k = 0
        while True:
            t = self.start + k / self.rate
            if t >= end:
                return
            yield t
            k += 1

    def emission_at(self, k: int) -> float:
        return self.start + k / self.rate


def draw_flows(
    n: int,
    count: int,
    rate: float,
    rng: random.Random,
    start: float = 0.0,
    stop: float = float("inf"),
) -> List[CbrFlow]:
    """`count` distinct ordered (src, dst) pairs drawn without replacement; one shared rate."""
    if n < 2:
        raise ValueError(f"need at least 2 nodes for a flow, got {n}")
    pairs = [(s, d) for s in range(n) for d in range(n) if s != d]
    if count > len(pairs):
        raise ValueError(f"cannot draw {count} distinct flows from {len(pairs)} ordered pairs")
    chosen = rng.sample(pairs, count)
    return [CbrFlow(src=s, dst=d, rate=rate, start=start, stop=stop) for s, d in chosen]
