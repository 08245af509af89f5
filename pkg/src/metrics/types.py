# src/metrics/types.py
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Deque, Optional


class MetricKind(str, Enum):
    """Quality link metrics; exactly one is active per simulation run."""
    ETX = "etx"
    INVETX = "invetx"
    ML = "ml"
    MD = "md"

    @classmethod
    def parse(cls, value: "str | MetricKind") -> "MetricKind":
        if isinstance(value, MetricKind):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown metric {value!r} (choose from {choices})") from None

    @property
    def label(self) -> str:
        return {"etx": "ETX", "invetx": "InvETX", "ml": "ML", "md": "MD"}[self.value]


class InvalidPathError(ValueError):
    """A path containing a link that must not be used for routing."""


@dataclass
class HelloWindow:
    """
    Sliding window of HELLO receipt times from one neighbor.
    Receipts older than window_seconds are dropped on every read.
    """
    window_seconds: float
    hello_interval: float
    receipt_timestamps: Deque[float] = field(default_factory=deque)

    def __post_init__(self) -> None:
        if self.window_seconds <= 0 or self.hello_interval <= 0:
            raise ValueError("window_seconds and hello_interval must be positive")

    @property
    def expected_count(self) -> int:
        return int(round(self.window_seconds / self.hello_interval))

    def record(self, t: float) -> None:
        if self.receipt_timestamps and t <= self.receipt_timestamps[-1]:
            raise ValueError(f"receipt timestamps must strictly increase ({t} after {self.receipt_timestamps[-1]})")
        self.receipt_timestamps.append(t)

    def prune(self, now: float) -> None:
        cutoff = now - self.window_seconds
        ts = self.receipt_timestamps
        while ts and ts[0] < cutoff:
            ts.popleft()

    def count(self, now: float) -> int:
        """Receipts within [now - w, now]; prunes older entries."""
        self.prune(now)
        return sum(1 for t in self.receipt_timestamps if t <= now)


@dataclass(frozen=True)
class LinkEstimate:
    """Per-link quality as seen by one node; delay_estimate is only filled for MD."""
    fd: float
    rd: float
    delay_estimate: Optional[float] = None

    @property
    def product(self) -> float:
        return self.fd * self.rd

    @property
    def usable(self) -> bool:
        return self.fd * self.rd > 0.0


@dataclass(frozen=True)
class PathCost:
    """
    Aggregated path metric. next_hop is carried only for deterministic tie-breaking
    inside route computation; it is not part of the metric value.
    """
    kind: MetricKind
    value: float
    hops: int
    next_hop: Optional[int] = None
