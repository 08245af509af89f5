# src/sim/trace.py
from __future__ import annotations

from pathlib import Path
from typing import List, Union

from src.common.files import write_lines
from src.sim.events import Event, EventKind


def _detail(event: Event) -> str:
    if event.kind is EventKind.PACKET_ARRIVAL:
        packet, sender = event.payload
        return f"{packet.kind.value} from={sender} id={packet.packet_id} hops={packet.hop_count}"
    if event.kind is EventKind.TRAFFIC_EMIT:
        index, k = event.payload
        return f"flow={index} k={k}"
    return event.action


class EventTrace:
    """One `t kind node detail` line per processed event."""

    def __init__(self) -> None:
        self.lines: List[str] = []

    def record(self, event: Event) -> None:
        self.lines.append(f"{event.time:.9f} {event.kind.value} {event.node} {_detail(event)}")

    def write(self, path: Union[str, Path]) -> Path:
        return write_lines(path, self.lines)

    def __len__(self) -> int:
        return len(self.lines)
