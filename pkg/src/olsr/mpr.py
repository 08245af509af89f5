# src/olsr/mpr.py
from __future__ import annotations

import logging
from typing import Dict, Set

from src.olsr.types import NeighborState
from src.topology.types import NodeId

logger = logging.getLogger(__name__)


def _candidate_degree(state: NeighborState, v: NodeId) -> int:
    # |H1(v)| as v itself advertised it in its last HELLO
    return len(state.one_hop[v].reported)


def select_mprs(state: NeighborState) -> Set[NodeId]:
    """
    Greedy MPR selection over symmetric 1-hop neighbors.

    Each round picks the neighbor covering the most still-uncovered 2-hop nodes;
    ties go to the higher advertised degree, then the smaller NodeId. Stops when every
    2-hop node is covered. 2-hop entries no candidate can reach are dropped as stale.
    """
    candidates = {v for v, e in state.one_hop.items() if e.symmetric}
    coverage: Dict[NodeId, Set[NodeId]] = {v: set() for v in candidates}
    uncovered: Set[NodeId] = set()

    for w in sorted(state.two_hop):
        live = state.two_hop[w] & candidates
        if not live:
            logger.warning("node %d: 2-hop neighbor %d has no covering 1-hop neighbor; dropped",
                           state.node, w)
            del state.two_hop[w]
            continue
        uncovered.add(w)
        for v in live:
            coverage[v].add(w)

    mprs: Set[NodeId] = set()
    while uncovered:
        best = min(
            (v for v in candidates if v not in mprs),
            key=lambda v: (-len(coverage[v] & uncovered), -_candidate_degree(state, v), v),
        )
        gain = coverage[best] & uncovered
        if not gain:
            break
        mprs.add(best)
        uncovered -= gain

    state.mpr_set = mprs
    state.selections += 1
    return set(mprs)


def maybe_trigger_tc(state: NeighborState) -> bool:
    """True iff the MPR set differs from the one seen at the previous check."""
    if state.selections == 0:
        raise ValueError("select_mprs has not run for this node yet")
    changed = state.mpr_set != state.last_mpr_set
    state.last_mpr_set = set(state.mpr_set)
    return changed


def covers_two_hop(state: NeighborState, mprs: Set[NodeId]) -> bool:
    """Coverage condition: every 2-hop node has a neighbor in `mprs` that reaches it."""
    return all(state.two_hop[w] & mprs for w in state.two_hop)
