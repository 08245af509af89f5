# src/olsr/types.py
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config.config import (
    CONTROL_ENTRY_BYTES,
    CONTROL_HEADER_BYTES,
    NEIGHBOR_HOLD_FACTOR,
    TOPOLOGY_HOLD_FACTOR,
)
from src.metrics.types import HelloWindow, LinkEstimate, PathCost
from src.topology.types import NodeId


class TcRedundancy(str, Enum):
    MPR_SELECTORS = "mpr_selectors"
    ALL_NEIGHBORS = "all_neighbors"


class OlsrConfig(BaseModel):
    """Protocol timing for one profile. Hold times default to 3x their interval."""
    model_config = ConfigDict(frozen=True)

    name: str = "custom"
    hello_interval: float = Field(gt=0)
    tc_interval: float = Field(gt=0)
    window_w: float = Field(gt=0)
    neighbor_hold_time: Optional[float] = Field(default=None, gt=0)
    topology_hold_time: Optional[float] = Field(default=None, gt=0)
    tc_redundancy: TcRedundancy = TcRedundancy.MPR_SELECTORS

    @model_validator(mode="after")
    def _check(self) -> "OlsrConfig":
        ratio = self.window_w / self.hello_interval
        if not math.isclose(ratio, round(ratio), rel_tol=0, abs_tol=1e-9) or round(ratio) < 1:
            raise ValueError(
                f"window_w ({self.window_w}) must be a multiple of hello_interval ({self.hello_interval})"
            )
        return self

    @property
    def neighbor_hold(self) -> float:
        if self.neighbor_hold_time is not None:
            return self.neighbor_hold_time
        return NEIGHBOR_HOLD_FACTOR * self.hello_interval

    @property
    def topology_hold(self) -> float:
        if self.topology_hold_time is not None:
            return self.topology_hold_time
        return TOPOLOGY_HOLD_FACTOR * self.tc_interval

    @property
    def expected_hellos(self) -> int:
        return int(round(self.window_w / self.hello_interval))


class HelloLink(NamedTuple):
    """One neighbor entry of a HELLO: who, how many of their HELLOs we heard in w, and
    (MD only) our smoothed one-way delay estimate of their link towards us."""
    neighbor: NodeId
    heard: int
    delay: Optional[float] = None


@dataclass(frozen=True)
class HelloMessage:
    origin: NodeId
    neighbor_list: Tuple[HelloLink, ...]
    emitted_at: float
    mprs: FrozenSet[NodeId] = frozenset()

    def __post_init__(self) -> None:
        if any(entry.neighbor == self.origin for entry in self.neighbor_list):
            raise ValueError("origin listed in its own HELLO")

    @property
    def size_bytes(self) -> int:
        return CONTROL_HEADER_BYTES + CONTROL_ENTRY_BYTES * len(self.neighbor_list)

    def heard_for(self, node: NodeId) -> Optional[HelloLink]:
        for entry in self.neighbor_list:
            if entry.neighbor == node:
                return entry
        return None


@dataclass(frozen=True)
class TcMessage:
    origin: NodeId
    advertised: Tuple[Tuple[NodeId, LinkEstimate], ...]
    sequence: int
    triggered: bool = False
    emitted_at: float = 0.0
    ttl: int = 255

    @property
    def size_bytes(self) -> int:
        return CONTROL_HEADER_BYTES + CONTROL_ENTRY_BYTES * len(self.advertised)


@dataclass
class NeighborEntry:
    """What a node knows about one 1-hop neighbor."""
    window: HelloWindow
    estimate: LinkEstimate
    last_heard: float
    symmetric: bool = False
    reported: FrozenSet[NodeId] = frozenset()
    heard_count: int = 0
    # one-way delay of the neighbor->self direction, measured from probes
    delay_in: Optional[float] = None


@dataclass
class NeighborState:
    """
    1-hop table (H1), 2-hop coverage map (H2 -> covering H1 members) and MPR sets of a node.
    two_hop never contains a 1-hop neighbor or the node itself.
    """
    node: NodeId
    one_hop: Dict[NodeId, NeighborEntry] = field(default_factory=dict)
    two_hop: Dict[NodeId, Set[NodeId]] = field(default_factory=dict)
    mpr_set: Set[NodeId] = field(default_factory=set)
    last_mpr_set: Set[NodeId] = field(default_factory=set)
    mpr_selectors: Set[NodeId] = field(default_factory=set)
    selections: int = 0
    # last TC sequence this node originated
    tc_sequence: int = 0

    def symmetric_neighbors(self) -> List[NodeId]:
        return sorted(v for v, e in self.one_hop.items() if e.symmetric)


@dataclass
class RouteEntry:
    next_hop: NodeId
    cost: PathCost


@dataclass
class RoutingTable:
    owner: NodeId
    entries: Dict[NodeId, RouteEntry] = field(default_factory=dict)

    def next_hop(self, dest: NodeId) -> Optional[NodeId]:
        entry = self.entries.get(dest)
        return entry.next_hop if entry else None

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ForwardDecision:
    process: bool
    forward: bool
