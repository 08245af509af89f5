# src/sim/engine.py
"""
Discrete-event run of OLSR over a static lossy topology.

Every node owns one FIFO transmit queue served at the link rate. When a frame starts
transmission its delivery draws are made (one per receiver, from the channel stream)
and surviving copies are scheduled to arrive after the airtime plus propagation delay.
HELLO and TC frames are link-local broadcasts; data and MD probes are unicast.
"""
from __future__ import annotations

import logging
import random
import zlib
from collections import deque
from enum import Enum
from typing import Deque, Dict, List, Optional, Sequence, Set

from src.config.config import (
    CONTROL_JITTER,
    DATA_BYTES,
    DATA_TTL,
    LINK_RATE_BPS,
    PROBE_BYTES,
    PROPAGATION_DELAY,
    QUEUE_CAPACITY,
    ROUTE_DEBOUNCE,
    SAMPLE_INTERVAL,
)
from src.metrics.types import MetricKind
from src.olsr.node import OlsrNode
from src.olsr.tc import relayed
from src.olsr.types import HelloMessage, OlsrConfig, RoutingTable, TcMessage
from src.overhead.costs import MprChangeLog
from src.sim.channel import Direction, Packet, PacketKind, transmission_delay, transmit
from src.sim.events import Event, EventKind, EventQueue
from src.sim.stats import SimStats
from src.sim.traffic import CbrFlow
from src.sim.trace import EventTrace
from src.topology.types import NodeId, Topology

logger = logging.getLogger(__name__)


class ForwardAction(str, Enum):
    DELIVERED = "delivered"
    ENQUEUED = "enqueued"
    DROP_NO_ROUTE = "drop_no_route"
    DROP_TTL = "drop_ttl"
    DROP_QUEUE = "drop_queue"


def derive_rng(seed: int, tag: str) -> random.Random:
    """Independent stream per purpose; a stable CRC of the tag keeps streams process-independent."""
    crc = zlib.crc32(tag.encode("utf-8")) & 0xFFFFFFFF
    return random.Random((int(seed) & 0xFFFFFFFF) ^ crc)


class Simulator:
    def __init__(
        self,
        topology: Topology,
        config: OlsrConfig,
        flows: Sequence[CbrFlow],
        metric: "MetricKind | str",
        duration: float,
        seed: int,
        *,
        warmup: float = 0.0,
        jitter: bool = True,
        trace: Optional[EventTrace] = None,
        sample_interval: float = SAMPLE_INTERVAL,
        link_rate_bps: float = LINK_RATE_BPS,
        propagation_delay: float = PROPAGATION_DELAY,
        queue_capacity: int = QUEUE_CAPACITY,
        data_ttl: int = DATA_TTL,
    ):
        if duration < 0:
            raise ValueError(f"duration must be non-negative, got {duration!r}")
        if warmup < 0:
            raise ValueError(f"warmup must be non-negative, got {warmup!r}")
        for flow in flows:
            for end in (flow.src, flow.dst):
                if not 0 <= end < topology.n:
                    raise ValueError(f"flow {flow.src}->{flow.dst} references node {end} outside [0, {topology.n})")
        if queue_capacity < 1:
            raise ValueError("queue_capacity must be at least 1")

        self.topology = topology
        self.config = config
        self.flows = list(flows)
        self.metric = MetricKind.parse(metric)
        self.duration = float(duration)
        self.seed = seed
        self.warmup = float(warmup)
        self.jitter = jitter
        self.trace = trace
        self.sample_interval = sample_interval
        self.link_rate_bps = link_rate_bps
        self.propagation_delay = propagation_delay
        self.queue_capacity = queue_capacity
        self.data_ttl = data_ttl

        self.channel_rng = derive_rng(seed, "channel")
        self.jitter_rng = derive_rng(seed, "jitter")

        self.nodes: List[OlsrNode] = [OlsrNode(u, config, self.metric) for u in topology.node_ids()]
        self.queues: List[Deque[Packet]] = [deque() for _ in topology.node_ids()]
        self.busy: List[bool] = [False] * topology.n
        self.route_pending: Set[NodeId] = set()

        self.events = EventQueue()
        self.stats = SimStats()
        self.mpr_log = MprChangeLog()
        self.samples: List[Dict[str, float]] = []
        self.now = 0.0
        self._packet_ids = 0
        self._ran = False

    # -- scheduling helpers ----------------------------------------------------------

    def _jitter(self, interval: float) -> float:
        if not self.jitter:
            return 0.0
        return self.jitter_rng.uniform(0.0, CONTROL_JITTER * interval)

    def _schedule_periodic(self, node: NodeId, action: str, interval: float, k: int) -> None:
        t = k * interval + self._jitter(interval)
        if t <= self.duration:
            self.events.push(t, EventKind.TIMER, node, action, k)

    def _schedule_routes(self, node: NodeId) -> None:
        if node in self.route_pending:
            return
        self.route_pending.add(node)
        self.events.push(self.now + ROUTE_DEBOUNCE, EventKind.TIMER, node, "route")

    def _measuring(self) -> bool:
        return self.now >= self.warmup

    def _next_packet_id(self) -> int:
        self._packet_ids += 1
        return self._packet_ids

    def _bootstrap(self) -> None:
        for u in self.topology.node_ids():
            self._schedule_periodic(u, "hello", self.config.hello_interval, 1)
            self._schedule_periodic(u, "tc", self.config.tc_interval, 1)
        for i, flow in enumerate(self.flows):
            t = flow.emission_at(0)
            if t < min(flow.stop, self.duration):
                self.events.push(t, EventKind.TRAFFIC_EMIT, flow.src, "emit", (i, 0))
        if self.sample_interval > 0 and self.sample_interval <= self.duration:
            self.events.push(self.sample_interval, EventKind.STATS_SAMPLE, -1, "sample")

    # -- transmit queue ----------------------------------------------------------------

    def enqueue(self, node: NodeId, packet: Packet) -> bool:
        queue = self.queues[node]
        if len(queue) >= self.queue_capacity:
            if packet.kind is PacketKind.DATA:
                if packet.measured:
                    self.stats.drops_queue += 1
            else:
                self.stats.control_queue_drops += 1
            return False
        queue.append(packet)
        if not self.busy[node]:
            self._start_next(node)
        return True

    def _receivers(self, node: NodeId, packet: Packet) -> Sequence[NodeId]:
        if packet.next_hop is not None:
            return (packet.next_hop,)
        if packet.dst is None:
            return self.topology.neighbors(node)
        return (packet.dst,)

    def _start_next(self, node: NodeId) -> None:
        queue = self.queues[node]
        if not queue:
            self.busy[node] = False
            return
        packet = queue.popleft()
        self.busy[node] = True
        airtime = transmission_delay(packet.size_bytes, self.link_rate_bps)
        finish = self.now + airtime
        for v in self._send(packet, node):
            self.events.push(finish + self.propagation_delay, EventKind.PACKET_ARRIVAL, v, packet.kind.value,
                             (packet, node))
        self.events.push(finish, EventKind.TIMER, node, "tx_done")

    def _send(self, packet: Packet, node: NodeId) -> List[NodeId]:
        """Count the transmission and draw delivery per receiver; returns the receivers that got it."""
        self._count_tx(packet, node)
        delivered = []
        for v in self._receivers(node, packet):
            link = self.topology.link(node, v)
            if transmit(packet, link, Direction.FORWARD, self.channel_rng):
                self._count_rx(packet, node)
                delivered.append(v)
            elif packet.kind is PacketKind.DATA and packet.measured:
                self.stats.drops_channel += 1
        return delivered

    def _release_control(self) -> None:
        """
        Control frames emitted by `duration` but still waiting in a queue go out at the end of
        the run. Queued data stays put and is reported as in flight.
        """
        for node in self.topology.node_ids():
            queue = self.queues[node]
            for packet in queue:
                if packet.kind.is_control:
                    self._send(packet, node)
            self.queues[node] = deque(p for p in queue if not p.kind.is_control)

    def _count_tx(self, packet: Packet, node: NodeId) -> None:
        if not packet.measured:
            return
        if packet.kind is PacketKind.HELLO:
            self.stats.hello_tx += 1
        elif packet.kind is PacketKind.TC:
            self.stats.tc_tx += 1
        elif packet.kind is PacketKind.MD_PROBE:
            self.stats.md_probe_tx += 1

    def _count_rx(self, packet: Packet, sender: NodeId) -> None:
        if not packet.measured:
            return
        if packet.kind is PacketKind.HELLO:
            self.stats.hello_rx += 1
        elif packet.kind is PacketKind.TC:
            self.stats.tc_rx += 1
            msg: TcMessage = packet.body
            if not msg.triggered and msg.origin == sender:
                self.stats.tc_default_rx += 1
        elif packet.kind is PacketKind.MD_PROBE:
            self.stats.md_probe_rx += 1

    # -- protocol actions ----------------------------------------------------------------

    def _control_packet(self, kind: PacketKind, node: NodeId, body, size: int, dst: Optional[NodeId] = None) -> Packet:
        return Packet(kind=kind, src=node, dst=dst, origin_time=self.now, size_bytes=size,
                      packet_id=self._next_packet_id(), measured=self.now > self.warmup, body=body)

    def _note_mpr_change(self, node: NodeId) -> None:
        self.mpr_log.record(self.now, node, self.nodes[node].state.mpr_set)
        self.stats.mpr_changes += 1

    def _emit_tc(self, node: NodeId, triggered: bool) -> None:
        msg = self.nodes[node].originate_tc(self.now, triggered)
        self.stats.tc_originated += 1
        if triggered:
            self.stats.tc_triggered += 1
        self.enqueue(node, self._control_packet(PacketKind.TC, node, msg, msg.size_bytes))

    def _on_hello_timer(self, node: NodeId, k: int) -> None:
        olsr = self.nodes[node]
        links_changed, trigger = olsr.expire(self.now)
        if trigger:
            self._note_mpr_change(node)
            self._emit_tc(node, triggered=True)
        if links_changed:
            self._schedule_routes(node)
        msg = olsr.hello(self.now)
        self.enqueue(node, self._control_packet(PacketKind.HELLO, node, msg, msg.size_bytes))
        if self.metric is MetricKind.MD:
            for v in olsr.state.symmetric_neighbors():
                self.enqueue(node, self._control_packet(PacketKind.MD_PROBE, node, None, PROBE_BYTES, dst=v))
        self._schedule_periodic(node, "hello", self.config.hello_interval, k + 1)

    def _on_tc_timer(self, node: NodeId, k: int) -> None:
        self._emit_tc(node, triggered=False)
        self._schedule_periodic(node, "tc", self.config.tc_interval, k + 1)

    def _on_route_timer(self, node: NodeId) -> None:
        self.route_pending.discard(node)
        self.nodes[node].recompute_routes()
        self.stats.route_computations += 1

    def _on_arrival(self, node: NodeId, packet: Packet, sender: NodeId) -> None:
        olsr = self.nodes[node]
        if packet.kind is PacketKind.HELLO:
            msg: HelloMessage = packet.body
            links_changed, trigger = olsr.receive_hello(msg, self.now)
            if trigger:
                self._note_mpr_change(node)
                self._emit_tc(node, triggered=True)
            if links_changed:
                self._schedule_routes(node)
        elif packet.kind is PacketKind.TC:
            tc: TcMessage = packet.body
            decision, changed = olsr.receive_tc(tc, sender, self.now)
            if decision.forward:
                self.stats.tc_forwarded += 1
                self.enqueue(node, self._control_packet(PacketKind.TC, node, relayed(tc), tc.size_bytes))
            if changed:
                self._schedule_routes(node)
        elif packet.kind is PacketKind.MD_PROBE:
            olsr.record_probe_delay(sender, self.now - packet.origin_time)
        else:
            self.forward_data(node, packet.hopped())

    def forward_data(self, node: NodeId, packet: Packet) -> ForwardAction:
        """Deliver at the destination, or look up the next hop and queue the packet there."""
        if packet.dst == node:
            if packet.measured:
                self.stats.data_delivered += 1
                self.stats.latency_sum += self.now - packet.origin_time
                self.stats.bytes_delivered += packet.size_bytes
                self.stats.hop_sum += packet.hop_count
            return ForwardAction.DELIVERED
        if packet.hop_count >= self.data_ttl:
            if packet.measured:
                self.stats.drops_ttl += 1
            return ForwardAction.DROP_TTL
        next_hop = self.nodes[node].next_hop(packet.dst)
        if next_hop is None or not self.topology.has_link(node, next_hop):
            if packet.measured:
                self.stats.drops_no_route += 1
            return ForwardAction.DROP_NO_ROUTE
        if not self.enqueue(node, packet.via(next_hop)):
            return ForwardAction.DROP_QUEUE
        return ForwardAction.ENQUEUED

    def _on_traffic(self, index: int, k: int) -> None:
        flow = self.flows[index]
        measured = self._measuring()
        packet = Packet(kind=PacketKind.DATA, src=flow.src, dst=flow.dst, origin_time=self.now,
                        size_bytes=DATA_BYTES, packet_id=self._next_packet_id(), measured=measured)
        if measured:
            self.stats.data_sent += 1
        self.forward_data(flow.src, packet)
        t = flow.emission_at(k + 1)
        if t < min(flow.stop, self.duration):
            self.events.push(t, EventKind.TRAFFIC_EMIT, flow.src, "emit", (index, k + 1))

    def _on_sample(self) -> None:
        for u in self.topology.node_ids():
            self.mpr_log.record(self.now, u, self.nodes[u].state.mpr_set)
        self.samples.append({
            "time": self.now,
            "data_delivered": self.stats.data_delivered,
            "routing_packets": self.stats.routing_packets_transmitted,
        })
        t = self.now + self.sample_interval
        if t <= self.duration:
            self.events.push(t, EventKind.STATS_SAMPLE, -1, "sample")

    # -- main loop -----------------------------------------------------------------------

    def _dispatch(self, event: Event) -> None:
        if event.kind is EventKind.PACKET_ARRIVAL:
            packet, sender = event.payload
            self._on_arrival(event.node, packet, sender)
        elif event.kind is EventKind.TRAFFIC_EMIT:
            index, k = event.payload
            self._on_traffic(index, k)
        elif event.kind is EventKind.STATS_SAMPLE:
            self._on_sample()
        elif event.action == "tx_done":
            self._start_next(event.node)
        elif event.action == "hello":
            self._on_hello_timer(event.node, event.payload)
        elif event.action == "tc":
            self._on_tc_timer(event.node, event.payload)
        elif event.action == "route":
            self._on_route_timer(event.node)
        else:
            raise ValueError(f"unknown timer action {event.action!r}")

    def run(self) -> SimStats:
        if self._ran:
            raise RuntimeError("a Simulator instance runs once; build a new one")
        self._ran = True
        self._bootstrap()
        while self.events:
            t = self.events.peek_time()
            if t is None or t > self.duration:
                break
            event = self.events.pop()
            self.now = event.time
            if self.trace is not None:
                self.trace.record(event)
            self._dispatch(event)
        self._release_control()
        self.stats.in_flight = self._count_in_flight()
        logger.debug("run seed=%s metric=%s: sent=%d delivered=%d routing=%d",
                     self.seed, self.metric.value, self.stats.data_sent, self.stats.data_delivered,
                     self.stats.routing_packets_transmitted)
        return self.stats

    def _count_in_flight(self) -> int:
        queued = sum(1 for q in self.queues for p in q if p.kind is PacketKind.DATA and p.measured)
        arriving = 0
        for event in self.events.pending():
            if event.kind is EventKind.PACKET_ARRIVAL:
                packet, _ = event.payload
                if packet.kind is PacketKind.DATA and packet.measured:
                    arriving += 1
        return queued + arriving

    def routing_tables(self) -> Dict[NodeId, RoutingTable]:
        return {u: n.routes for u, n in enumerate(self.nodes)}


def run(
    topology: Topology,
    config: OlsrConfig,
    flows: Sequence[CbrFlow],
    metric: "MetricKind | str",
    duration: float,
    seed: int,
    **options,
) -> SimStats:
    """Build a Simulator and run it to completion."""
    return Simulator(topology, config, flows, metric, duration, seed, **options).run()
