# src/sim/events.py
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Optional, Tuple

from src.topology.types import NodeId


class EventKind(str, Enum):
    TIMER = "timer"
    PACKET_ARRIVAL = "packet_arrival"
    TRAFFIC_EMIT = "traffic_emit"
    STATS_SAMPLE = "stats_sample"


@dataclass(frozen=True)
class Event:
    """One scheduled occurrence. `sequence` is the insertion counter that breaks time ties."""
    time: float
    sequence: int
    kind: EventKind
    node: NodeId = -1
    action: str = ""
    payload: Any = field(default=None, compare=False)


class EventQueue:
    """Min-heap of events popped in (time, sequence) order."""

    def __init__(self) -> None:
        self._heap: List[Tuple[float, int, Event]] = []
        self._counter = itertools.count()

    def push(
        self,
        time: float,
        kind: EventKind,
        node: NodeId = -1,
        action: str = "",
        payload: Any = None,
    ) -> Event:
        if time < 0:
            raise ValueError(f"event time must be non-negative, got {time!r}")
        event = Event(time, next(self._counter), kind, node, action, payload)
        heapq.heappush(self._heap, (event.time, event.sequence, event))
        return event

    def pop(self) -> Event:
        return heapq.heappop(self._heap)[2]

    def peek_time(self) -> Optional[float]:
        return self._heap[0][0] if self._heap else None

    def pending(self) -> List[Event]:
        """Remaining events in pop order (does not consume the queue)."""
        return [entry[2] for entry in sorted(self._heap)]

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)
