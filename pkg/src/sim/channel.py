# src/sim/channel.py
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Optional

from src.topology.types import LinkQuality, NodeId


class Direction(str, Enum):
    FORWARD = "forward"
    REVERSE = "reverse"


class PacketKind(str, Enum):
    HELLO = "hello"
    TC = "tc"
    MD_PROBE = "md_probe"
    DATA = "data"

    @property
    def is_control(self) -> bool:
        return self is not PacketKind.DATA


@dataclass
class Packet:
    """
    A frame on the simulated medium. `dst` is None for link-local broadcasts (HELLO, TC);
    `measured` marks frames that count towards run statistics (data originated at or after
    warm-up, control emitted after it); `next_hop` is set while a data packet waits in a
    transmit queue.
    """
    kind: PacketKind
    src: NodeId
    dst: Optional[NodeId]
    origin_time: float
    size_bytes: int
    hop_count: int = 0
    packet_id: int = 0
    measured: bool = True
    next_hop: Optional[NodeId] = None
    body: Any = field(default=None, repr=False)

    def hopped(self) -> "Packet":
        return replace(self, hop_count=self.hop_count + 1, next_hop=None)

    def via(self, next_hop: NodeId) -> "Packet":
        return replace(self, next_hop=next_hop)


def transmit(packet: Packet, link: LinkQuality, direction: Direction, rng: random.Random) -> bool:
    """
    One Bernoulli delivery draw: fd for the forward direction, rd for the reverse one.
    The draw is consumed whether or not the packet survives.
    """
    p = link.fd if Direction(direction) is Direction.FORWARD else link.rd
    return rng.random() < p


def transmission_delay(size_bytes: int, rate_bps: float) -> float:
    if rate_bps <= 0:
        raise ValueError(f"link rate must be positive, got {rate_bps!r}")
    return size_bytes * 8.0 / rate_bps
