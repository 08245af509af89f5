# src/olsr/routing.py
"""
Route computation over a node's link-state view.

One label-setting search serves all four metrics; only the label algebra differs:

    ETX, MD   additive, minimise the sum
    ML        minimise the sum of -log(fd*rd), then hops; the reported cost is the product itself
    InvETX    fewest hops first, then the largest sum of fd*rd

Labels are compared as (metric key, next hop) so equal-cost routes resolve to the
smallest first hop on every run.
"""
from __future__ import annotations

import heapq
import logging
import math
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Tuple

from src.metrics.paths import link_allowed
from src.metrics.types import LinkEstimate, MetricKind, PathCost
from src.olsr.types import RouteEntry, RoutingTable
from src.topology.types import LinkKey, NodeId

logger = logging.getLogger(__name__)

# (value, log_sum, hops): the reported value plus what the ordering key needs
_Label = Tuple[float, float, int]


def _extend(kind: MetricKind, label: _Label, link: LinkEstimate) -> _Label:
    value, log_sum, hops = label
    p = link.fd * link.rd
    if kind is MetricKind.ETX:
        return value + 1.0 / p, 0.0, hops + 1
    if kind is MetricKind.INVETX:
        return value + p, 0.0, hops + 1
    if kind is MetricKind.ML:
        return value * p, log_sum - math.log(p), hops + 1
    return value + link.delay_estimate, 0.0, hops + 1  # MD; link_allowed guarantees a delay


def _key(kind: MetricKind, label: _Label) -> Tuple[float, ...]:
    value, log_sum, hops = label
    if kind is MetricKind.ML:
        return log_sum, float(hops)
    if kind is MetricKind.INVETX:
        return (float(hops), -value)
    return (value,)


def _origin_label(kind: MetricKind) -> _Label:
    return (1.0 if kind is MetricKind.ML else 0.0), 0.0, 0


def compute_routing_table(
    self_id: NodeId,
    topology_table: Mapping[LinkKey, LinkEstimate],
    metric: "MetricKind | str",
) -> RoutingTable:
    """
    Best route to every reachable destination from `self_id`.

    `topology_table` maps directed links (u, v) to the estimate used for u -> v. Links
    that are unusable under the metric are skipped; unreachable destinations are absent.
    """
    kind = MetricKind.parse(metric)

    adjacency: Dict[NodeId, List[Tuple[NodeId, LinkEstimate]]] = defaultdict(list)
    for (u, v), est in topology_table.items():
        if u == v or not link_allowed(kind, est):
            continue
        adjacency[u].append((v, est))

    settled: Dict[NodeId, Tuple[NodeId, _Label]] = {}
    tentative: Dict[NodeId, Tuple[Tuple[float, ...], NodeId]] = {}
    heap: List[Tuple[Tuple[float, ...], NodeId, NodeId, _Label]] = []

    start = _origin_label(kind)
    for v, est in adjacency.get(self_id, ()):
        label = _extend(kind, start, est)
        rank = (_key(kind, label), v)
        if v not in tentative or rank < tentative[v]:
            tentative[v] = rank
            heapq.heappush(heap, (rank[0], v, v, label))

    while heap:
        key, next_hop, node, label = heapq.heappop(heap)
        if node in settled or node == self_id:
            continue
        settled[node] = (next_hop, label)
        for w, est in adjacency.get(node, ()):
            if w in settled or w == self_id:
                continue
            cand = _extend(kind, label, est)
            rank = (_key(kind, cand), next_hop)
            if w not in tentative or rank < tentative[w]:
                tentative[w] = rank
                heapq.heappush(heap, (rank[0], next_hop, w, cand))

    table = RoutingTable(owner=self_id)
    for dest in sorted(settled):
        next_hop, (value, _, hops) = settled[dest]
        table.entries[dest] = RouteEntry(
            next_hop=next_hop,
            cost=PathCost(kind=kind, value=value, hops=hops, next_hop=next_hop),
        )
    logger.debug("node %d: %d routes under %s", self_id, len(table), kind.label)
    return table


def dump_routes(tables: Iterable[RoutingTable]) -> List[str]:
    """`D <node> <dest> <next_hop> <cost>` lines, sorted by node then destination."""
    lines: List[str] = []
    for table in sorted(tables, key=lambda t: t.owner):
        for dest in sorted(table.entries):
            entry = table.entries[dest]
            lines.append(f"D {table.owner} {dest} {entry.next_hop} {entry.cost.value!r}")
    return lines


def walk_route(tables: Mapping[NodeId, RoutingTable], src: NodeId, dst: NodeId, max_hops: int) -> List[NodeId]:
    """
    Follow next-hop pointers from src towards dst. Returns the visited node list; stops
    early on a missing entry or after max_hops forwards.
    """
    path = [src]
    node = src
    while node != dst and len(path) <= max_hops:
        table = tables.get(node)
        nxt = table.next_hop(dst) if table is not None else None
        if nxt is None:
            break
        path.append(nxt)
        node = nxt
    return path
