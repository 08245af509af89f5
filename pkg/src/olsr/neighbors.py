# src/olsr/neighbors.py
"""Neighbor sensing: HELLO reception, link estimation, 2-hop set upkeep and expiry."""
from __future__ import annotations

import logging
from typing import Dict, Set

from src.metrics.estimators import delivery_ratio, ratio_from_count
from src.metrics.types import HelloWindow, LinkEstimate
from src.olsr.types import HelloLink, HelloMessage, NeighborEntry, NeighborState, OlsrConfig

logger = logging.getLogger(__name__)


def _new_entry(config: OlsrConfig, now: float) -> NeighborEntry:
    return NeighborEntry(
        window=HelloWindow(window_seconds=config.window_w, hello_interval=config.hello_interval),
        estimate=LinkEstimate(0.0, 0.0),
        last_heard=now,
    )


def rebuild_two_hop(state: NeighborState) -> None:
    """
    H2 = neighbors of symmetric 1-hop neighbors, minus self and minus every 1-hop neighbor.
    Each 2-hop node maps to the 1-hop neighbors that reach it.
    """
    two: Dict[int, Set[int]] = {}
    for v, entry in state.one_hop.items():
        if not entry.symmetric:
            continue
        for w in entry.reported:
            if w == state.node or w in state.one_hop:
                continue
            two.setdefault(w, set()).add(v)
    state.two_hop = two


def expire_neighbors(state: NeighborState, now: float, hold_time: float) -> bool:
    """Drop neighbors unheard for longer than hold_time. Returns True when anything expired."""
    stale = [v for v, e in state.one_hop.items() if now - e.last_heard > hold_time]
    for v in stale:
        del state.one_hop[v]
        state.mpr_selectors.discard(v)
        state.mpr_set.discard(v)
    if stale:
        logger.debug("node %d expired neighbors %s at t=%.3f", state.node, stale, now)
        rebuild_two_hop(state)
    return bool(stale)


def process_hello(state: NeighborState, msg: HelloMessage, now: float, config: OlsrConfig) -> NeighborState:
    """
    Fold one received HELLO into the neighbor state.

    rd (origin -> self) comes from our own receipt window for the origin; fd (self -> origin)
    is the count the origin reports hearing from us over the same expected count.
    """
    if msg.origin == state.node:
        raise ValueError(f"node {state.node} received its own HELLO")

    entry = state.one_hop.get(msg.origin)
    if entry is None:
        entry = _new_entry(config, now)
        state.one_hop[msg.origin] = entry

    entry.window.record(now)
    entry.last_heard = now

    mine = msg.heard_for(state.node)
    entry.symmetric = mine is not None
    expected = entry.window.expected_count
    fd = ratio_from_count(mine.heard, expected) if mine is not None else 0.0
    rd = delivery_ratio(entry.window, now)
    delay = entry.estimate.delay_estimate
    if mine is not None and mine.delay is not None:
        delay = mine.delay
    entry.estimate = LinkEstimate(fd=fd, rd=rd, delay_estimate=delay)
    entry.reported = frozenset(link.neighbor for link in msg.neighbor_list)

    if state.node in msg.mprs:
        state.mpr_selectors.add(msg.origin)
    else:
        state.mpr_selectors.discard(msg.origin)

    expire_neighbors(state, now, config.neighbor_hold)
    rebuild_two_hop(state)
    return state


def build_hello(state: NeighborState, now: float, config: OlsrConfig) -> HelloMessage:
    """HELLO advertising every 1-hop neighbor with the HELLO count heard from it in w."""
    expected = config.expected_hellos
    links = []
    for v in sorted(state.one_hop):
        entry = state.one_hop[v]
        heard = min(entry.window.count(now), expected)
        links.append(HelloLink(neighbor=v, heard=heard, delay=entry.delay_in))
    return HelloMessage(
        origin=state.node,
        neighbor_list=tuple(links),
        emitted_at=now,
        mprs=frozenset(state.mpr_set),
    )
