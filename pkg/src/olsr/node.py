# src/olsr/node.py
from __future__ import annotations

import logging
from typing import Dict, FrozenSet, Optional, Set, Tuple

from src.metrics.estimators import update_delay_estimate
from src.metrics.types import LinkEstimate, MetricKind
from src.olsr.mpr import maybe_trigger_tc, select_mprs
from src.olsr.neighbors import build_hello, expire_neighbors, process_hello
from src.olsr.routing import compute_routing_table
from src.olsr.tc import TopologyTable, flood_tc, generate_tc
from src.olsr.types import (
    ForwardDecision,
    HelloMessage,
    NeighborState,
    OlsrConfig,
    RoutingTable,
    TcMessage,
)
from src.topology.types import LinkKey, NodeId

logger = logging.getLogger(__name__)


class OlsrNode:
    """
    All protocol state of one simulated node.

    The engine drives it through the receive_/originate_ calls; each call reports whether
    something the route computation depends on changed, so the engine can debounce.
    """

    def __init__(self, node_id: NodeId, config: OlsrConfig, metric: "MetricKind | str"):
        self.node_id = node_id
        self.config = config
        self.metric = MetricKind.parse(metric)
        self.state = NeighborState(node=node_id)
        self.topology = TopologyTable()
        self.routes = RoutingTable(owner=node_id)

    # -- neighbor sensing ------------------------------------------------------------

    def _shape(self) -> Tuple[FrozenSet[Tuple[NodeId, bool, FrozenSet[NodeId]]], ...]:
        # what MPR selection depends on
        return (frozenset((v, e.symmetric, e.reported) for v, e in self.state.one_hop.items()),)

    def _own_links(self) -> Dict[LinkKey, LinkEstimate]:
        return {
            (self.node_id, v): e.estimate
            for v, e in self.state.one_hop.items()
            if e.symmetric
        }

    def hello(self, now: float) -> HelloMessage:
        return build_hello(self.state, now, self.config)

    def receive_hello(self, msg: HelloMessage, now: float) -> Tuple[bool, bool]:
        """
        Process a HELLO. Returns (links_changed, tc_trigger): whether own link estimates or
        the neighborhood changed, and whether the MPR set changed as a result.
        """
        shape_before = self._shape()
        links_before = self._own_links()
        process_hello(self.state, msg, now, self.config)
        trigger = False
        if self._shape() != shape_before:
            trigger = self.reselect_mprs()
        return self._own_links() != links_before, trigger

    def reselect_mprs(self) -> bool:
        select_mprs(self.state)
        changed = maybe_trigger_tc(self.state)
        if changed:
            logger.debug("node %d MPR set -> %s", self.node_id, sorted(self.state.mpr_set))
        return changed

    def record_probe_delay(self, neighbor: NodeId, sample: float) -> None:
        """Fold a one-way probe delay from `neighbor` into the smoothed incoming-delay estimate."""
        entry = self.state.one_hop.get(neighbor)
        if entry is None:
            return
        entry.delay_in = update_delay_estimate(entry.delay_in, sample)

    def expire(self, now: float) -> Tuple[bool, bool]:
        """Purge stale neighbors and TC entries. Returns (links_changed, tc_trigger)."""
        shape_before = self._shape()
        neighbors_gone = expire_neighbors(self.state, now, self.config.neighbor_hold)
        tc_gone = self.topology.expire(now)
        trigger = False
        if neighbors_gone and self._shape() != shape_before and self.state.selections:
            trigger = self.reselect_mprs()
        return neighbors_gone or tc_gone, trigger

    # -- topology control --------------------------------------------------------------

    def originate_tc(self, now: float, triggered: bool) -> TcMessage:
        return generate_tc(self.state, self.config, now, triggered)

    def receive_tc(self, msg: TcMessage, sender: NodeId, now: float) -> Tuple[ForwardDecision, bool]:
        """Returns the flooding decision and whether the topology table content changed."""
        previous = self.topology.entries.get(msg.origin)
        before = dict(previous.links) if previous is not None else None
        decision = flood_tc(msg, self.state, self.topology, sender, now, self.config)
        changed = decision.process and self.topology.entries[msg.origin].links != before
        return decision, changed

    # -- routing -------------------------------------------------------------------------

    def link_state(self) -> Dict[LinkKey, LinkEstimate]:
        """Own symmetric links with local estimates, plus every advertised link from TCs."""
        links = self.topology.link_state(exclude_origin=self.node_id)
        links.update(self._own_links())
        return links

    def recompute_routes(self) -> bool:
        """Rebuild the routing table. Returns True if any next hop or cost changed."""
        table = compute_routing_table(self.node_id, self.link_state(), self.metric)
        changed = _route_view(table) != _route_view(self.routes)
        self.routes = table
        return changed

    def next_hop(self, dest: NodeId) -> Optional[NodeId]:
        return self.routes.next_hop(dest)

    @property
    def mpr_set(self) -> Set[NodeId]:
        return set(self.state.mpr_set)


def _route_view(table: RoutingTable) -> Dict[NodeId, Tuple[NodeId, float, int]]:
    return {d: (e.next_hop, e.cost.value, e.cost.hops) for d, e in table.entries.items()}
