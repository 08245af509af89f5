# src/olsr/tc.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.config.config import TC_TTL
from src.metrics.types import LinkEstimate
from src.olsr.types import (
    ForwardDecision,
    NeighborState,
    OlsrConfig,
    TcMessage,
    TcRedundancy,
)
from src.topology.types import LinkKey, NodeId

logger = logging.getLogger(__name__)


def advertised_neighbors(state: NeighborState, config: OlsrConfig) -> List[NodeId]:
    """Neighbors whose links go into a TC: MPR selectors by default, or every symmetric neighbor."""
    if config.tc_redundancy is TcRedundancy.ALL_NEIGHBORS:
        return state.symmetric_neighbors()
    return sorted(v for v in state.mpr_selectors if v in state.one_hop)


def generate_tc(state: NeighborState, config: OlsrConfig, now: float, triggered: bool) -> TcMessage:
    """Build the node's next TC; bumps the node's TC sequence number."""
    state.tc_sequence += 1
    advertised = tuple((v, state.one_hop[v].estimate) for v in advertised_neighbors(state, config))
    return TcMessage(
        origin=state.node,
        advertised=advertised,
        sequence=state.tc_sequence,
        triggered=triggered,
        emitted_at=now,
        ttl=TC_TTL,
    )


@dataclass
class TopologyEntry:
    sequence: int
    links: Dict[NodeId, LinkEstimate]
    expires_at: float


@dataclass
class TopologyTable:
    """
    Link-state learned from TCs, keyed by originator.

    `last_sequence` doubles as the duplicate table and outlives expired entries, so a late
    copy of an old TC is still recognised as stale.
    """
    entries: Dict[NodeId, TopologyEntry] = field(default_factory=dict)
    last_sequence: Dict[NodeId, int] = field(default_factory=dict)

    def is_stale(self, origin: NodeId, sequence: int) -> bool:
        last = self.last_sequence.get(origin)
        return last is not None and sequence <= last

    def update(self, msg: TcMessage, now: float, hold_time: float) -> bool:
        """Install msg as the newest advertisement of its origin. Returns True if the links changed."""
        self.last_sequence[msg.origin] = msg.sequence
        links = dict(msg.advertised)
        previous = self.entries.get(msg.origin)
        self.entries[msg.origin] = TopologyEntry(msg.sequence, links, now + hold_time)
        return previous is None or previous.links != links

    def expire(self, now: float) -> bool:
        gone = [o for o, e in self.entries.items() if e.expires_at < now]
        for origin in gone:
            del self.entries[origin]
        if gone:
            logger.debug("topology entries expired for %s at t=%.3f", gone, now)
        return bool(gone)

    def link_state(self, exclude_origin: Optional[NodeId] = None) -> Dict[LinkKey, LinkEstimate]:
        """Directed links origin -> advertised neighbor with the origin's estimate."""
        out: Dict[LinkKey, LinkEstimate] = {}
        for origin, entry in self.entries.items():
            if origin == exclude_origin:
                continue
            for v, est in entry.links.items():
                out[(origin, v)] = est
        return out

    def __len__(self) -> int:
        return len(self.entries)


def flood_tc(
    msg: TcMessage,
    state: NeighborState,
    table: TopologyTable,
    sender: NodeId,
    now: float,
    config: OlsrConfig,
) -> ForwardDecision:
    """
    Receive one copy of a TC at the node owning `state`/`table`, heard from `sender`.

    A copy whose sequence is not newer than the last seen for its origin is ignored.
    Fresh content always goes into the topology table; the copy is relayed only when
    `sender` picked this node as an MPR and the TTL allows another hop.
    """
    if msg.origin == state.node:
        return ForwardDecision(process=False, forward=False)
    if table.is_stale(msg.origin, msg.sequence):
        return ForwardDecision(process=False, forward=False)
    table.update(msg, now, config.topology_hold)
    forward = sender in state.mpr_selectors and msg.ttl > 1
    return ForwardDecision(process=True, forward=forward)


def relayed(msg: TcMessage) -> TcMessage:
    """Copy of msg as retransmitted by an MPR."""
    return TcMessage(
        origin=msg.origin,
        advertised=msg.advertised,
        sequence=msg.sequence,
        triggered=msg.triggered,
        emitted_at=msg.emitted_at,
        ttl=msg.ttl - 1,
    )
